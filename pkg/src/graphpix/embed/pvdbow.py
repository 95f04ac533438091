"""PV-DBOW trainer: document vectors predict their words via negative sampling.

Per epoch, each (document, word) pair gets one SGD step on the loss
``-log sigmoid(v.u_w) - sum_n log sigmoid(-v.u_n)`` with noise words drawn
from the unigram^(3/4) distribution (a draw equal to the target word is
skipped).  The learning rate decays linearly to lr/100 across epochs.
Single-threaded runs are bit-reproducible for a fixed seed; the optional
parallel mode trades that for speed (hogwild updates).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

try:
    from numba import njit, prange

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap if not (args and callable(args[0])) else args[0]

    prange = range


@dataclass
class Vocabulary:
    """Dense word ids (0..|vocab|-1) with occurrence counts."""

    word_to_id: dict[str, int]
    counts: np.ndarray

    @property
    def size(self) -> int:
        return len(self.word_to_id)


def build_vocabulary(docs: list[list[str]], min_count: int = 1) -> Vocabulary:
    """Dense ids in first-seen order; words occurring fewer than min_count
    times across the corpus are dropped."""
    raw: dict[str, int] = {}
    order: list[str] = []
    for words in docs:
        for w in words:
            if w in raw:
                raw[w] += 1
            else:
                raw[w] = 1
                order.append(w)
    word_to_id: dict[str, int] = {}
    counts: list[int] = []
    for w in order:
        if raw[w] >= min_count:
            word_to_id[w] = len(counts)
            counts.append(raw[w])
    return Vocabulary(word_to_id=word_to_id, counts=np.asarray(counts, dtype=np.int64))


def noise_cdf(vocab: Vocabulary, power: float = 0.75) -> np.ndarray:
    weights = vocab.counts.astype(np.float64) ** power
    return np.cumsum(weights / weights.sum())


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


def pvdbow_loss(doc_vec: np.ndarray, word_vec: np.ndarray, noise_vecs: np.ndarray) -> float:
    """Negative-sampling loss of one (doc, word) step against explicit noise rows."""
    eps = 1e-12
    pos = _sigmoid(float(doc_vec @ word_vec))
    loss = -np.log(max(pos, eps))
    for n in range(noise_vecs.shape[0]):
        neg = _sigmoid(-float(doc_vec @ noise_vecs[n]))
        loss -= np.log(max(neg, eps))
    return float(loss)


def pvdbow_gradients(
    doc_vec: np.ndarray, word_vec: np.ndarray, noise_vecs: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Analytic gradients of pvdbow_loss w.r.t. (doc, word, noise) vectors."""
    s_pos = _sigmoid(float(doc_vec @ word_vec))
    g_doc = (s_pos - 1.0) * word_vec
    g_word = (s_pos - 1.0) * doc_vec
    g_noise = np.empty_like(noise_vecs)
    for n in range(noise_vecs.shape[0]):
        s_neg = _sigmoid(float(doc_vec @ noise_vecs[n]))
        g_doc = g_doc + s_neg * noise_vecs[n]
        g_noise[n] = s_neg * doc_vec
    return g_doc, g_word, g_noise


@njit(cache=True)
def _epoch_serial(doc_vecs, word_vecs, pair_doc, pair_word, order, negatives, lr):
    eps = 1e-12
    d = doc_vecs.shape[1]
    k = negatives.shape[1]
    loss = 0.0
    for oi in range(order.shape[0]):
        i = order[oi]
        di = pair_doc[i]
        wi = pair_word[i]
        step_loss = 0.0
        dot = 0.0
        for j in range(d):
            dot += doc_vecs[di, j] * word_vecs[wi, j]
        s = 1.0 / (1.0 + np.exp(-dot))
        step_loss -= np.log(max(s, eps))
        g = (s - 1.0) * lr
        for j in range(d):
            dv = doc_vecs[di, j]
            doc_vecs[di, j] -= g * word_vecs[wi, j]
            word_vecs[wi, j] -= g * dv
        for nn in range(k):
            ni = negatives[i, nn]
            if ni == wi:  # drawing the target as noise would cancel the update
                continue
            dot = 0.0
            for j in range(d):
                dot += doc_vecs[di, j] * word_vecs[ni, j]
            s = 1.0 / (1.0 + np.exp(-dot))
            step_loss -= np.log(max(1.0 - s, eps))
            g = s * lr
            for j in range(d):
                dv = doc_vecs[di, j]
                doc_vecs[di, j] -= g * word_vecs[ni, j]
                word_vecs[ni, j] -= g * dv
        loss += step_loss
    return loss


@njit(cache=True, parallel=True)
def _epoch_hogwild(doc_vecs, word_vecs, pair_doc, pair_word, negatives, lr):
    eps = 1e-12
    d = doc_vecs.shape[1]
    k = negatives.shape[1]
    loss = 0.0
    for i in prange(pair_doc.shape[0]):
        di = pair_doc[i]
        wi = pair_word[i]
        step_loss = 0.0
        dot = 0.0
        for j in range(d):
            dot += doc_vecs[di, j] * word_vecs[wi, j]
        s = 1.0 / (1.0 + np.exp(-dot))
        step_loss -= np.log(max(s, eps))
        g = (s - 1.0) * lr
        for j in range(d):
            dv = doc_vecs[di, j]
            doc_vecs[di, j] -= g * word_vecs[wi, j]
            word_vecs[wi, j] -= g * dv
        for nn in range(k):
            ni = negatives[i, nn]
            if ni == wi:
                continue
            dot = 0.0
            for j in range(d):
                dot += doc_vecs[di, j] * word_vecs[ni, j]
            s = 1.0 / (1.0 + np.exp(-dot))
            step_loss -= np.log(max(1.0 - s, eps))
            g = s * lr
            for j in range(d):
                dv = doc_vecs[di, j]
                doc_vecs[di, j] -= g * word_vecs[ni, j]
                word_vecs[ni, j] -= g * dv
        loss += step_loss
    return loss


def _expected_loss(
    doc_vecs: np.ndarray,
    word_vecs: np.ndarray,
    pair_doc: np.ndarray,
    pair_word: np.ndarray,
    noise_probs: np.ndarray,
    negatives: int,
) -> float:
    """Exact expectation of the step loss over the noise distribution
    (skip rule included); deterministic in the parameters."""
    eps = 1e-12
    pos_dots = np.einsum("ij,ij->i", doc_vecs[pair_doc], word_vecs[pair_word])
    total = float(-np.log(np.clip(_sigmoid(pos_dots), eps, None)).sum())
    if negatives:
        neglog = -np.log(np.clip(_sigmoid(-(doc_vecs @ word_vecs.T)), eps, None))
        base = neglog @ noise_probs
        per_pair = negatives * (
            base[pair_doc] - noise_probs[pair_word] * neglog[pair_doc, pair_word]
        )
        total += float(per_pair.sum())
    return total / pair_doc.shape[0]


def train_pvdbow(
    docs: list[list[str]],
    d: int,
    epochs: int,
    lr: float,
    negatives: int = 5,
    seed: int = 0,
    parallel: bool = False,
    loss_mode: str = "training",
    min_count: int = 1,
) -> tuple[np.ndarray, list[float]]:
    """Train document vectors; returns (doc_vectors (n_docs, d), per-epoch loss).

    Vectors initialize uniformly in [-0.5/d, 0.5/d] from the seed; pair order
    is reshuffled and noise words redrawn every epoch from the same generator.
    Words rarer than min_count are excluded from the vocabulary and training.
    loss_mode "training" logs the running step loss (cheap); "expected"
    evaluates the exact expected objective after each epoch (deterministic,
    costs an extra docs-by-vocab pass).
    """
    if d < 1:
        raise ValueError("embedding dimension must be >= 1")
    if epochs < 1:
        raise ValueError("epochs must be >= 1")
    if negatives < 0:
        raise ValueError("negatives must be >= 0")
    if loss_mode not in ("training", "expected"):
        raise ValueError(f"unknown loss_mode {loss_mode!r}")
    for idx, words in enumerate(docs):
        if not words:
            raise ValueError(f"document {idx} is empty")

    vocab = build_vocabulary(docs, min_count=min_count)
    if vocab.size == 0:
        # pruning must never empty the whole corpus; fall back to keeping all
        vocab = build_vocabulary(docs, min_count=1)
    kept = [[w for w in words if w in vocab.word_to_id] for words in docs]
    cdf = noise_cdf(vocab)
    noise_probs = np.diff(np.concatenate(([0.0], cdf)))

    pair_doc = np.concatenate(
        [np.full(len(words), di, dtype=np.int32) for di, words in enumerate(kept)]
    )
    pair_word = np.concatenate(
        [np.asarray([vocab.word_to_id[w] for w in words], dtype=np.int32) for words in kept]
    )
    n_pairs = pair_doc.shape[0]
    if n_pairs == 0:
        raise ValueError("no trainable (doc, word) pairs after vocabulary pruning")

    rng = np.random.default_rng(seed)
    bound = 0.5 / d
    doc_vecs = rng.uniform(-bound, bound, size=(len(docs), d))
    word_vecs = rng.uniform(-bound, bound, size=(vocab.size, d))

    lr_floor = lr / 100.0
    losses: list[float] = []
    for epoch in range(epochs):
        frac = epoch / max(epochs - 1, 1)
        lr_e = lr + (lr_floor - lr) * frac
        if negatives:
            drawn = np.searchsorted(cdf, rng.random((n_pairs, negatives)))
            negs = np.minimum(drawn, vocab.size - 1).astype(np.int32)
        else:
            negs = np.zeros((n_pairs, 0), dtype=np.int32)
        if parallel:
            loss = _epoch_hogwild(doc_vecs, word_vecs, pair_doc, pair_word, negs, lr_e)
        else:
            order = rng.permutation(n_pairs).astype(np.int64)
            loss = _epoch_serial(doc_vecs, word_vecs, pair_doc, pair_word, order, negs, lr_e)
        if loss_mode == "expected":
            losses.append(
                _expected_loss(doc_vecs, word_vecs, pair_doc, pair_word, noise_probs, negatives)
            )
        else:
            losses.append(float(loss) / n_pairs)

    # docs whose words were all pruned carry no signal: zero them out so the
    # downstream normalization flags them degenerate
    trained = np.zeros(len(docs), dtype=bool)
    trained[np.unique(pair_doc)] = True
    doc_vecs[~trained] = 0.0
    return doc_vecs, losses
