"""Write the instance corpus: python scripts/build_corpus.py [DIR] (default: corpus/)."""
import sys

from stretchwidth.corpus import write_corpus

if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else "corpus"
    for p in write_corpus(target):
        print(p)
