"""
Vstupní skript: python app.py sweep --train data/mini/train.jsonl --test data/mini/test.jsonl ...
Totéž jako python -m docsim.
"""
from docsim.cli import main

if __name__ == "__main__":
    main()
