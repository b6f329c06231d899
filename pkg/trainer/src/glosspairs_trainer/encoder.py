"""Locally-built tiny BERT encoder for offline runs and tests.

Real experiments point ``TrainConfig.model`` at a pretrained checkpoint
directory or hub id; this module produces a randomly initialized
miniature with a character-level WordPiece vocabulary so the whole
train/predict path can run with no downloads.
"""

from pathlib import Path

from transformers import BertConfig, BertForSequenceClassification, \
    BertTokenizerFast

SPECIALS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
MARK_TOKENS = ["[UNUSED0]", "[UNUSED1]"]

ARABIC_LETTERS = "ءآأؤإئابةتثجحخدذرزسشصضطظعغفقكلمنهوىي"
EXTRA_CHARS = "0123456789.:'\"،؛؟!-()«»"


def _charset(corpus_sequences) -> list[str]:
    chars = set(ARABIC_LETTERS) | set(EXTRA_CHARS)
    for seq in corpus_sequences or ():
        chars.update(ch for ch in seq if not ch.isspace())
    return sorted(chars)


def build_tiny_encoder(out_dir, corpus_sequences=None,
                       hidden_size=32, num_layers=2, seed=0) -> Path:
    """Write a random-weight miniature encoder + tokenizer to out_dir."""
    import torch

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    chars = _charset(corpus_sequences)
    vocab = list(SPECIALS) + list(MARK_TOKENS)
    vocab.extend(chars)
    vocab.extend("##" + c for c in chars)
    (out_dir / "vocab.txt").write_text("\n".join(vocab) + "\n",
                                       encoding="utf-8")

    tokenizer = BertTokenizerFast(vocab_file=str(out_dir / "vocab.txt"),
                                  do_lower_case=False)
    tokenizer.add_special_tokens(
        {"additional_special_tokens": MARK_TOKENS})
    tokenizer.save_pretrained(out_dir)

    torch.manual_seed(seed)
    config = BertConfig(
        vocab_size=len(vocab),
        hidden_size=hidden_size,
        num_hidden_layers=num_layers,
        num_attention_heads=2,
        intermediate_size=hidden_size * 4,
        max_position_embeddings=512,
        num_labels=2,
    )
    model = BertForSequenceClassification(config)
    model.save_pretrained(out_dir)
    return out_dir
