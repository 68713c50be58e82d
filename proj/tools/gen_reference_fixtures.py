#!/usr/bin/env python3
# Copyright 2026 The toonbench Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Builds results CSVs whose aggregates equal the reference tables below.

reference_by_model.csv has 10 runs per model; every run of a model has the
table's token total, and successes are spread so that the mean one-shot and
final accuracies over the 40 (run, case) pairs match the table.
reference_by_case.csv has 210 rows per (case, track), every row with the
table's token count, and as many one-shot and final successes as the table's
percentages of 210.

    tools/gen_reference_fixtures.py tests/fixtures
"""

import argparse
import os

CASES = ["users", "order", "company", "invoice"]
TRACKS = ["J", "JSO", "T"]
HEADER = ("model,run_index,case,track,one_shot_success,final_success,attempts,"
          "prompt_tokens,completion_tokens,flags")

# model: (J 1-S, J Fin, J Tok, JSO 1-S, JSO Fin, JSO Tok, T 1-S, T Fin, T Tok)
BY_MODEL = [
    ("NousResearch/Hermes-4-405B", 92.5, 92.5, 3252, 35.0, 100, 4759, 50.0, 60.0, 4671),
    ("NousResearch/Hermes-4-70B", 75.0, 75.0, 4414, 37.5, 75.0, 5594, 50.0, 50.0, 4738),
    ("PrimeIntellect/INTELLECT-3", 72.5, 75.0, 10682, 72.5, 77.5, 10103, 40.0, 65.0, 13315),
    ("Qwen/Qwen2.5-Coder-7B-fast", 0.0, 0.0, 37705, 75.0, 75.0, 4440, 27.5, 27.5, 32715),
    ("Qwen/Qwen3-235B-A22B-Inst", 100, 100, 2772, 100, 100, 2772, 50.0, 100, 4715),
    ("Qwen/Qwen3-235B-A22B-Thk", 82.5, 82.5, 11425, 87.5, 97.5, 7899, 50.0, 97.5, 17457),
    ("Qwen/Qwen3-30B-A3B-Inst", 75.0, 75.0, 4436, 75.0, 75.0, 4436, 50.0, 70.0, 5505),
    ("Qwen/Qwen3-32B", 75.0, 77.5, 10196, 75.0, 75.0, 4120, 47.5, 80.0, 9101),
    ("Qwen/Qwen3-Coder-30B-A3B", 75.0, 75.0, 4206, 75.0, 75.0, 4206, 50.0, 100, 4719),
    ("Qwen/Qwen3-Coder-480B", 75.0, 75.0, 4462, 75.0, 75.0, 4447, 50.0, 75.0, 4515),
    ("deepseek-ai/DeepSeek-R1", 55.0, 70.0, 13811, 65.0, 80.0, 4149, 25.0, 50.0, 19047),
    ("deepseek-ai/DeepSeek-V3-fast", 75.0, 100, 3600, 75.0, 100, 3584, 25.0, 80.0, 4734),
    ("google/gemma-2-2b-it", 75.0, 100, 4721, 77.5, 100, 4566, 0.0, 0.0, 5955),
    ("google/gemma-2-9b-it-fast", 75.0, 75.0, 6086, 75.0, 75.0, 6056, 50.0, 75.0, 5419),
    ("meta-llama/Llama-3.3-70B", 75.0, 75.0, 4551, 75.0, 75.0, 4447, 50.0, 50.0, 5148),
    ("meta-llama/Llama-3.1-8B", 72.5, 72.5, 7235, 75.0, 75.0, 6941, 22.5, 25.0, 4915),
    ("moonshotai/Kimi-K2-Instruct", 50.0, 75.0, 4284, 50.0, 75.0, 4283, 50.0, 100, 3937),
    ("nvidia/Llama-3_1-Nemotron", 75.0, 75.0, 4426, 50.0, 50.0, 5714, 50.0, 82.5, 4368),
    ("openai/gpt-oss-120b", 97.5, 100, 3685, 100, 100, 3545, 50.0, 87.5, 8223),
    ("openai/gpt-oss-20b", 50.0, 72.5, 14943, 50.0, 67.5, 15601, 50.0, 90.0, 9678),
    ("zai-org/GLM-4.5", 75.0, 87.5, 9677, 75.0, 92.5, 9135, 27.5, 52.5, 8110),
]

# case: (J 1-S, J Fin, J Tok, JSO 1-S, JSO Fin, JSO Tok, T 1-S, T Fin, T Tok)
BY_CASE = {
    "users": (94.8, 94.8, 1078, 92.9, 100, 556, 90.5, 90.5, 840),
    "order": (81.9, 81.9, 1746, 78.6, 83.3, 1255, 74.3, 78.6, 1585),
    "company": (18.6, 43.8, 3575, 21.9, 48.1, 2592, 0.0, 48.6, 2567),
    "invoice": (90.0, 90.0, 1723, 87.6, 95.2, 1349, 0.0, 52.4, 3626),
}

RUNS = 10


def row(model, run, case, track, one_shot, final, tokens):
    attempts = 1 if one_shot else (2 if final else 4)
    prompt = tokens * 3 // 4
    return "%s,%d,%s,%s,%s,%s,%d,%d,%d," % (
        model, run, case, track, str(one_shot).lower(), str(final).lower(),
        attempts, prompt, tokens - prompt)


def count_of(percent, total):
    k = round(percent * total / 100)
    assert abs(100.0 * k / total - percent) < 0.05 + 1e-9, (percent, total)
    return k


def by_model():
    lines = [HEADER]
    for entry in BY_MODEL:
        model, values = entry[0], entry[1:]
        cells = {}
        for t, track in enumerate(TRACKS):
            one, fin, tok = values[3 * t:3 * t + 3]
            k1, kf = count_of(one, 4 * RUNS), count_of(fin, 4 * RUNS)
            assert k1 <= kf
            cells[track] = (k1, kf, tok)
        for run in range(1, RUNS + 1):
            for c, case in enumerate(CASES):
                for track in TRACKS:
                    k1, kf, tok = cells[track]
                    i = (run - 1) * 4 + c
                    share = tok // 4 + (tok % 4 if c == 0 else 0)
                    lines.append(row(model, run, case, track, i < k1, i < kf, share))
    return lines


def by_case():
    models = [entry[0] for entry in BY_MODEL]
    total = len(models) * RUNS
    counts = {}
    for case in CASES:
        for t, track in enumerate(TRACKS):
            one, fin, tok = BY_CASE[case][3 * t:3 * t + 3]
            counts[case, track] = (count_of(one, total), count_of(fin, total), tok)
    lines = [HEADER]
    for m, model in enumerate(models):
        for run in range(1, RUNS + 1):
            i = m * RUNS + run - 1
            for case in CASES:
                for track in TRACKS:
                    k1, kf, tok = counts[case, track]
                    lines.append(row(model, run, case, track, i < k1, i < kf, tok))
    return lines


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out_dir")
    args = parser.parse_args()
    for name, lines in (("reference_by_model.csv", by_model()),
                        ("reference_by_case.csv", by_case())):
        with open(os.path.join(args.out_dir, name), "w", newline="\n") as f:
            f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
