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

"""Builds the toy tokenizer vocabulary used by the grammar tests.

The vocabulary holds the 256 single bytes followed by byte-pair merges
learned over the gold documents, written as `id<TAB>hex` lines.

    toonbench gold --out /tmp/gold
    tools/gen_toy_vocab.py /tmp/gold/*.gold.* > tests/fixtures/toy_vocab.tsv
"""

import argparse
import collections
import sys


def learn_merges(corpus, count):
    seqs = [[bytes([b]) for b in doc] for doc in corpus]
    seen = {bytes([b]) for b in range(256)}
    merges = []
    while len(merges) < count:
        pairs = collections.Counter()
        for seq in seqs:
            for a, b in zip(seq, seq[1:]):
                pairs[(a, b)] += 1
        candidates = [(n, p) for p, n in pairs.items() if n >= 2]
        if not candidates:
            break
        candidates.sort(key=lambda item: (-item[0], item[1]))
        _, (a, b) = candidates[0]
        merged = a + b
        for i, seq in enumerate(seqs):
            out = []
            j = 0
            while j < len(seq):
                if j + 1 < len(seq) and seq[j] == a and seq[j + 1] == b:
                    out.append(merged)
                    j += 2
                else:
                    out.append(seq[j])
                    j += 1
            seqs[i] = out
        if merged not in seen:
            seen.add(merged)
            merges.append(merged)
    return merges


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("files", nargs="+", help="documents to learn merges from")
    parser.add_argument("--merges", type=int, default=200)
    args = parser.parse_args()
    corpus = []
    for path in sorted(args.files):
        with open(path, "rb") as f:
            corpus.append(f.read())
    tokens = [bytes([b]) for b in range(256)] + learn_merges(corpus, args.merges)
    sys.stdout.write("# toonbench toy vocabulary: id<TAB>hex bytes\n")
    for i, tok in enumerate(tokens):
        sys.stdout.write(f"{i}\t{tok.hex()}\n")


if __name__ == "__main__":
    main()
