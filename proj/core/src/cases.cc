// Copyright 2026 The toonbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "toonbench/schema.h"

namespace toonbench {
namespace {

using V = Value;

Schema Obj(std::vector<SchemaField> fields) { return Schema::Object(std::move(fields)); }

CaseSpec UsersCase() {
  CaseSpec c{
      "users",
      "Create a user list:\n"
      "- User 1: Alice Johnson, alice@example.com, role admin\n"
      "- User 2: Bob Smith, bob@example.com, role editor\n"
      "- User 3: Carol White, carol@example.com, role viewer\n"
      "- User 4: Dan Brown, dan@example.com, role editor\n"
      "\n"
      "Return as JSON with fields for users array (with id, name, email, role).",
      "Create a user list with fields: users array (with id, name, email, role).\n"
      "- User 1: Alice Johnson, alice@example.com, role admin\n"
      "- User 2: Bob Smith, bob@example.com, role editor\n"
      "- User 3: Carol White, carol@example.com, role viewer\n"
      "- User 4: Dan Brown, dan@example.com, role editor\n",
      Obj({{"users", Schema::ArrayOf(Obj({{"id", Schema::Int()},
                                          {"name", Schema::Str()},
                                          {"email", Schema::Str()},
                                          {"role", Schema::Str()}}))}}),
      {}};
  auto user = [](int id, const char* name, const char* email, const char* role) {
    return V::MakeObject({{"id", id}, {"name", name}, {"email", email}, {"role", role}});
  };
  c.gold = V::MakeObject({{"users", V::MakeArray({
                                        user(1, "Alice Johnson", "alice@example.com", "admin"),
                                        user(2, "Bob Smith", "bob@example.com", "editor"),
                                        user(3, "Carol White", "carol@example.com", "viewer"),
                                        user(4, "Dan Brown", "dan@example.com", "editor"),
                                    })}});
  return c;
}

CaseSpec OrderCase() {
  CaseSpec c{
      "order",
      "Create an order record:\n"
      "- Order ID: 101\n"
      "- Customer: Ada (ID: 9)\n"
      "- Items:\n"
      "  * Product A1: quantity 2, price $9.99 each\n"
      "  * Product B2: quantity 1, price $14.50 each\n"
      "\n"
      "Return as JSON with fields for id, customer (with id and name), \n"
      "and items array (with sku, qty, price).",
      "Create an order record with fields: id, customer (with id and name), \n"
      "and items array (with sku, qty, price).\n"
      "- Order ID: 101\n"
      "- Customer: Ada (ID: 9)\n"
      "- Items:\n"
      "  * Product A1: quantity 2, price $9.99 each\n"
      "  * Product B2: quantity 1, price $14.50 each\n",
      Obj({{"id", Schema::Int()},
           {"customer", Obj({{"id", Schema::Int()}, {"name", Schema::Str()}})},
           {"items", Schema::ArrayOf(Obj({{"sku", Schema::Str()},
                                          {"qty", Schema::Int()},
                                          {"price", Schema::Float()}}))}}),
      {}};
  c.gold = V::MakeObject({
      {"id", 101},
      {"customer", V::MakeObject({{"id", 9}, {"name", "Ada"}})},
      {"items", V::MakeArray({
                    V::MakeObject({{"sku", "A1"}, {"qty", 2}, {"price", 9.99}}),
                    V::MakeObject({{"sku", "B2"}, {"qty", 1}, {"price", 14.50}}),
                })},
  });
  return c;
}

CaseSpec CompanyCase() {
  const char* facts =
      "- Company: Acme Corp, founded 1999\n"
      "- Department Engineering (budget 1200000):\n"
      "  * Team Platform, lead Grace Hopper (grace@acme.com), members:\n"
      "    101 Linus Torvalds (engineer), 102 Margaret Hamilton (engineer), "
      "103 Ken Thompson (sre)\n"
      "  * Team Mobile, lead Alan Kay (alan@acme.com), members:\n"
      "    104 Barbara Liskov (engineer)\n"
      "- Department Sales (budget 450000):\n"
      "  * Team EMEA, lead Joan Clarke (joan@acme.com), members:\n"
      "    105 Tim Berners-Lee (account manager), 106 Radia Perlman (sales engineer)\n";
  Schema member = Obj({{"id", Schema::Int()}, {"name", Schema::Str()}, {"role", Schema::Str()}});
  Schema team = Obj({{"name", Schema::Str()},
                     {"lead", Obj({{"name", Schema::Str()}, {"email", Schema::Str()}})},
                     {"members", Schema::ArrayOf(member)}});
  Schema dept = Obj({{"name", Schema::Str()},
                     {"budget", Schema::Int()},
                     {"teams", Schema::ArrayOf(team)}});
  CaseSpec c{
      "company",
      std::string("Create a company record:\n") + facts +
          "\n"
          "Return as JSON with fields for name, founded, and departments array (with name, "
          "budget,\n"
          "and teams array (with name, lead (with name and email), and members array (with id, "
          "name, role))).",
      std::string("Create a company record with fields: name, founded, and departments array "
                  "(with name, budget,\n"
                  "and teams array (with name, lead (with name and email), and members array "
                  "(with id, name, role))).\n") +
          facts,
      Obj({{"name", Schema::Str()},
           {"founded", Schema::Int()},
           {"departments", Schema::ArrayOf(dept)}}),
      {}};
  auto person = [](int id, const char* name, const char* role) {
    return V::MakeObject({{"id", id}, {"name", name}, {"role", role}});
  };
  auto lead = [](const char* name, const char* email) {
    return V::MakeObject({{"name", name}, {"email", email}});
  };
  c.gold = V::MakeObject({
      {"name", "Acme Corp"},
      {"founded", 1999},
      {"departments",
       V::MakeArray({
           V::MakeObject({
               {"name", "Engineering"},
               {"budget", 1200000},
               {"teams", V::MakeArray({
                             V::MakeObject({
                                 {"name", "Platform"},
                                 {"lead", lead("Grace Hopper", "grace@acme.com")},
                                 {"members", V::MakeArray({
                                                 person(101, "Linus Torvalds", "engineer"),
                                                 person(102, "Margaret Hamilton", "engineer"),
                                                 person(103, "Ken Thompson", "sre"),
                                             })},
                             }),
                             V::MakeObject({
                                 {"name", "Mobile"},
                                 {"lead", lead("Alan Kay", "alan@acme.com")},
                                 {"members", V::MakeArray({
                                                 person(104, "Barbara Liskov", "engineer"),
                                             })},
                             }),
                         })},
           }),
           V::MakeObject({
               {"name", "Sales"},
               {"budget", 450000},
               {"teams", V::MakeArray({
                             V::MakeObject({
                                 {"name", "EMEA"},
                                 {"lead", lead("Joan Clarke", "joan@acme.com")},
                                 {"members",
                                  V::MakeArray({
                                      person(105, "Tim Berners-Lee", "account manager"),
                                      person(106, "Radia Perlman", "sales engineer"),
                                  })},
                             }),
                         })},
           }),
       })},
  });
  return c;
}

CaseSpec InvoiceCase() {
  const char* facts =
      "- Invoice number: INV-2024-001, date 2024-03-15\n"
      "- Customer: Globex Ltd (billing@globex.example)\n"
      "- Items:\n"
      "  * W-100 \"Widget, standard\": quantity 2, price $19.99 each\n"
      "  * G-220 \"Gadget Pro\": quantity 1, price $149.00 each\n"
      "  * C-005 \"Cable, USB-C 2m\": quantity 5, price $4.25 each\n"
      "- Totals: currency USD, total 210.23\n";
  CaseSpec c{
      "invoice",
      std::string("Create an invoice record:\n") + facts +
          "\n"
          "Return as JSON with fields for number, date, customer (with name and email),\n"
          "items array (with sku, description, qty, price), and totals (with currency and "
          "total).",
      std::string("Create an invoice record with fields: number, date, customer (with name "
                  "and email),\n"
                  "items array (with sku, description, qty, price), and totals (with currency "
                  "and total).\n") +
          facts,
      Obj({{"number", Schema::Str()},
           {"date", Schema::Str()},
           {"customer", Obj({{"name", Schema::Str()}, {"email", Schema::Str()}})},
           {"items", Schema::ArrayOf(Obj({{"sku", Schema::Str()},
                                          {"description", Schema::Str()},
                                          {"qty", Schema::Int()},
                                          {"price", Schema::Float()}}))},
           {"totals", Obj({{"currency", Schema::Str()}, {"total", Schema::Float()}})}}),
      {}};
  auto item = [](const char* sku, const char* desc, int qty, double price) {
    return V::MakeObject({{"sku", sku}, {"description", desc}, {"qty", qty}, {"price", price}});
  };
  c.gold = V::MakeObject({
      {"number", "INV-2024-001"},
      {"date", "2024-03-15"},
      {"customer", V::MakeObject({{"name", "Globex Ltd"}, {"email", "billing@globex.example"}})},
      {"items", V::MakeArray({
                    item("W-100", "Widget, standard", 2, 19.99),
                    item("G-220", "Gadget Pro", 1, 149.0),
                    item("C-005", "Cable, USB-C 2m", 5, 4.25),
                })},
      {"totals", V::MakeObject({{"currency", "USD"}, {"total", 210.23}})},
  });
  return c;
}

}  // namespace

const std::vector<CaseSpec>& BuiltinCases() {
  static const std::vector<CaseSpec> cases = {UsersCase(), OrderCase(), CompanyCase(),
                                              InvoiceCase()};
  return cases;
}

const CaseSpec& FindCase(std::string_view name) {
  for (const CaseSpec& c : BuiltinCases()) {
    if (c.name == name) return c;
  }
  throw Error("unknown case '" + std::string(name) + "'");
}

}  // namespace toonbench
