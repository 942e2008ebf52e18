"""The three sparse linear classifiers and their class-imbalance machinery.

* Multinomial (softmax) logistic regression minimizing class-weighted
  cross-entropy with an L2 penalty on the weights (biases unregularized).
* One-vs-rest linear SVM minimizing class-weighted squared hinge loss plus
  the same L2 penalty; the three binary subproblems are independent.
* Multinomial Naive Bayes with additive smoothing, consuming TF-IDF values
  as fractional counts.  Naive Bayes trains unweighted; only the two
  discriminative models take class weights.

Balanced class weights follow ``w_c = N / (C * n_c)``, which makes the sum
of ``w_c * n_c`` equal N exactly and upweights minority-class errors.

Both discriminative trainers run the deterministic Armijo descent from
:mod:`sentimen.optim`, starting at zero, so training involves no randomness.
Labels are plain class ordinals here; mapping ordinals to sentiment names is
the corpus layer's concern.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import DegenerateDataError, ZeroClassCountError
from .features import SparseVector, Vocabulary
from .optim import minimize


@dataclass(eq=False)
class ClassWeights:
    """Per-class loss multipliers, all positive."""

    w: np.ndarray
    mode: str = "balanced"

    def __len__(self) -> int:
        return len(self.w)


def compute_class_weights(counts, mode: str = "balanced") -> ClassWeights:
    """Balanced mode gives ``w_c = N / (C * n_c)``; uniform mode all ones."""
    counts = np.asarray(counts, dtype=np.int64)
    if mode == "uniform":
        return ClassWeights(np.ones(len(counts)), mode)
    if mode != "balanced":
        raise ValueError(f"unknown weight mode: {mode!r}")
    for c, n_c in enumerate(counts):
        if n_c == 0:
            raise ZeroClassCountError(c)
    total = int(counts.sum())
    w = total / (len(counts) * counts.astype(np.float64))
    return ClassWeights(w, mode)


@dataclass(frozen=True)
class TrainConfig:
    """Optimizer settings shared by the discriminative trainers."""

    max_iter: int = 1000
    tol: float = 1e-6
    lam: float = 1e-4
    weight_mode: str = "balanced"

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.tol <= 0:
            raise ValueError("tol must be > 0")
        if self.lam < 0:
            raise ValueError("lambda must be >= 0")
        if self.weight_mode not in ("balanced", "uniform"):
            raise ValueError(f"unknown weight mode: {self.weight_mode!r}")


@dataclass(eq=False)
class LogRegModel:
    """Softmax classifier: class-by-feature weights plus per-class biases."""

    W: np.ndarray
    b: np.ndarray
    lam: float
    vocab_ref: Vocabulary | None = None
    meta: dict = field(default_factory=dict)
    history: list = field(default_factory=list, repr=False)
    converged: bool = True


@dataclass(eq=False)
class SvmModel:
    """One-vs-rest linear SVM; row c of W scores class c against the rest."""

    W: np.ndarray
    b: np.ndarray
    lam: float
    vocab_ref: Vocabulary | None = None
    meta: dict = field(default_factory=dict)
    history: list = field(default_factory=list, repr=False)
    converged: bool = True


@dataclass(eq=False)
class NbModel:
    """Multinomial Naive Bayes over fractional TF-IDF mass."""

    log_prior: np.ndarray
    log_likelihood: np.ndarray
    alpha: float
    vocab_ref: Vocabulary | None = None
    meta: dict = field(default_factory=dict)


def sparse_to_csr(X, n_features: int) -> sp.csr_matrix:
    """Stack SparseVectors into a CSR matrix for vectorized training."""
    indptr = np.zeros(len(X) + 1, dtype=np.int64)
    for i, vec in enumerate(X):
        indptr[i + 1] = indptr[i] + vec.nnz
    if indptr[-1] == 0:
        return sp.csr_matrix((len(X), n_features), dtype=np.float64)
    indices = np.concatenate([vec.indices for vec in X if vec.nnz])
    data = np.concatenate([vec.values for vec in X if vec.nnz])
    return sp.csr_matrix((data, indices, indptr), shape=(len(X), n_features))


def softmax_ce_objective(W, b, X, y, sample_weights, lam):
    """Weighted softmax cross-entropy with L2 on W.

    ``f = (1/N) sum_i s_i * (-log softmax(W x_i + b)[y_i]) + (lam/2)||W||^2``
    Returns ``(loss, grad_W, grad_b)``.  ``X`` is CSR, ``sample_weights`` the
    per-sample multipliers (the class weight of each true label).
    """
    n = X.shape[0]
    Z = X @ W.T + b
    Z = Z - Z.max(axis=1, keepdims=True)
    expz = np.exp(Z)
    denom = expz.sum(axis=1)
    rows = np.arange(n)
    log_p_true = Z[rows, y] - np.log(denom)
    loss = -float(np.dot(sample_weights, log_p_true)) / n + 0.5 * lam * float(np.sum(W * W))

    resid = expz / denom[:, None]
    resid[rows, y] -= 1.0
    resid *= (sample_weights / n)[:, None]
    grad_W = np.asarray((X.T @ resid).T) + lam * W
    grad_b = resid.sum(axis=0)
    return loss, grad_W, grad_b


def softmax_ce_loss(W, b, X, y, sample_weights, lam):
    """Loss-only evaluation of :func:`softmax_ce_objective` (line search)."""
    n = X.shape[0]
    Z = X @ W.T + b
    Z = Z - Z.max(axis=1, keepdims=True)
    log_denom = np.log(np.exp(Z).sum(axis=1))
    log_p_true = Z[np.arange(n), y] - log_denom
    return -float(np.dot(sample_weights, log_p_true)) / n + 0.5 * lam * float(np.sum(W * W))


def squared_hinge_objective(w, b, X, targets, sample_weights, lam):
    """Weighted squared hinge for one binary one-vs-rest subproblem.

    ``f = (lam/2)||w||^2 + (1/N) sum_i s_i * max(0, 1 - t_i (w.x_i + b))^2``
    with targets in {-1, +1}.  Returns ``(loss, grad_w, grad_b)``.
    """
    n = X.shape[0]
    scores = X @ w + b
    margin = 1.0 - targets * scores
    active = margin > 0.0
    m_act = margin[active]
    s_act = sample_weights[active]
    loss = 0.5 * lam * float(np.dot(w, w)) + float(np.dot(s_act, m_act * m_act)) / n

    coef = np.zeros(n)
    coef[active] = -2.0 * s_act * m_act * targets[active] / n
    grad_w = np.asarray(X.T @ coef).ravel() + lam * w
    grad_b = float(coef.sum())
    return loss, grad_w, grad_b


def squared_hinge_loss(w, b, X, targets, sample_weights, lam):
    """Loss-only evaluation of :func:`squared_hinge_objective`."""
    n = X.shape[0]
    margin = 1.0 - targets * (X @ w + b)
    active = margin > 0.0
    m_act = margin[active]
    return 0.5 * lam * float(np.dot(w, w)) + float(np.dot(sample_weights[active], m_act * m_act)) / n


def _validate_training_data(X, y, n_classes):
    y = np.asarray(y, dtype=np.int64)
    if len(X) != len(y):
        raise DegenerateDataError(f"got {len(X)} vectors but {len(y)} labels")
    if len(y) < n_classes:
        raise DegenerateDataError(f"need at least {n_classes} examples, got {len(y)}")
    present = np.unique(y)
    if present.min(initial=0) < 0 or present.max(initial=0) >= n_classes:
        raise DegenerateDataError(f"label ordinals outside [0, {n_classes})")
    for c in range(n_classes):
        if c not in present:
            raise DegenerateDataError(f"class {c} absent from training data")
    return y


def train_logreg(X, y, class_weights: ClassWeights, config: TrainConfig = TrainConfig(), *, n_features: int) -> LogRegModel:
    """Fit the weighted softmax classifier from W = 0, b = 0."""
    n_classes = len(class_weights)
    y = _validate_training_data(X, y, n_classes)
    Xc = sparse_to_csr(X, n_features)
    sw = class_weights.w[y]
    n_w = n_classes * n_features

    def unpack(theta):
        return theta[:n_w].reshape(n_classes, n_features), theta[n_w:]

    def value_and_grad(theta):
        W, b = unpack(theta)
        loss, gW, gb = softmax_ce_objective(W, b, Xc, y, sw, config.lam)
        return loss, np.concatenate([gW.ravel(), gb])

    def value(theta):
        W, b = unpack(theta)
        return softmax_ce_loss(W, b, Xc, y, sw, config.lam)

    res = minimize(value_and_grad, np.zeros(n_w + n_classes),
                   value=value, max_iter=config.max_iter, tol=config.tol)
    W, b = unpack(res.params)
    return LogRegModel(W=W.copy(), b=b.copy(), lam=config.lam,
                       history=res.loss_history, converged=res.converged)


def predict_logreg(model: LogRegModel, x: SparseVector):
    """Return ``(label, probabilities)``; ties go to the lowest ordinal."""
    z = model.W[:, x.indices] @ x.values + model.b
    z = z - z.max()
    p = np.exp(z)
    p /= p.sum()
    return int(np.argmax(p)), p


def train_svm_ovr(X, y, class_weights: ClassWeights, config: TrainConfig = TrainConfig(), *, n_features: int) -> SvmModel:
    """Fit one squared-hinge binary classifier per class against the rest.

    Every subproblem keeps the per-sample weights of the true multiclass
    labels, so minority-class mistakes stay expensive on both sides of each
    binary split.
    """
    n_classes = len(class_weights)
    y = _validate_training_data(X, y, n_classes)
    Xc = sparse_to_csr(X, n_features)
    sw = class_weights.w[y]

    W = np.zeros((n_classes, n_features))
    b = np.zeros(n_classes)
    histories = []
    converged = True
    for c in range(n_classes):
        targets = np.where(y == c, 1.0, -1.0)

        def value_and_grad(theta, targets=targets):
            loss, gw, gb = squared_hinge_objective(theta[:-1], theta[-1], Xc, targets, sw, config.lam)
            return loss, np.concatenate([gw, [gb]])

        def value(theta, targets=targets):
            return squared_hinge_loss(theta[:-1], theta[-1], Xc, targets, sw, config.lam)

        res = minimize(value_and_grad, np.zeros(n_features + 1),
                       value=value, max_iter=config.max_iter, tol=config.tol)
        W[c] = res.params[:-1]
        b[c] = res.params[-1]
        histories.append(res.loss_history)
        converged = converged and res.converged
    return SvmModel(W=W, b=b, lam=config.lam, history=histories, converged=converged)


def predict_svm(model: SvmModel, x: SparseVector):
    """Return ``(label, decision margins)``; ties go to the lowest ordinal."""
    scores = model.W[:, x.indices] @ x.values + model.b
    return int(np.argmax(scores)), scores


def train_nb(X, y, alpha: float = 1.0, *, n_features: int, n_classes: int | None = None) -> NbModel:
    """Fit multinomial Naive Bayes on fractional TF-IDF mass.

    ``log_likelihood[c, t] = ln((S_ct + alpha) / (S_c + alpha * V))`` where
    ``S_ct`` is the total value of feature t over class-c documents.  With
    ``alpha = 0`` a zero-mass term gets -inf (never NaN); the -inf only
    reaches a posterior when that term actually occurs at predict time.
    """
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    if n_classes is None:
        n_classes = int(max(y)) + 1 if len(y) else 0
    y = _validate_training_data(X, y, n_classes)
    Xc = sparse_to_csr(X, n_features)

    mass = np.zeros((n_classes, n_features))
    counts = np.zeros(n_classes, dtype=np.int64)
    for c in range(n_classes):
        members = y == c
        counts[c] = int(members.sum())
        mass[c] = np.asarray(Xc[members].sum(axis=0)).ravel()

    log_prior = np.log(counts / len(y))
    denom = mass.sum(axis=1) + alpha * n_features
    log_likelihood = np.full((n_classes, n_features), -np.inf)
    ok = denom > 0
    with np.errstate(divide="ignore"):
        log_likelihood[ok] = np.log((mass[ok] + alpha) / denom[ok, None])
    return NbModel(log_prior=log_prior, log_likelihood=log_likelihood, alpha=alpha)


def predict_nb(model: NbModel, x: SparseVector):
    """Return ``(label, log posteriors)``; ties go to the lowest ordinal."""
    if x.nnz:
        # Elementwise product keeps -inf likelihoods NaN-free (values are > 0).
        evidence = (model.log_likelihood[:, x.indices] * x.values).sum(axis=1)
        scores = model.log_prior + evidence
    else:
        scores = model.log_prior.copy()
    return int(np.argmax(scores)), scores


def explain_linear(model, x: SparseVector, vocab: Vocabulary, k: int = 5):
    """Top-k (term, contribution) pairs for the predicted class of ``x``.

    Contributions are ``W[c, t] * x_t`` over the nonzero features; exact zeros
    are dropped, ordering is by descending contribution with lexicographic
    tie-break.  Works for both discriminative models.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if isinstance(model, LogRegModel):
        label, _ = predict_logreg(model, x)
    elif isinstance(model, SvmModel):
        label, _ = predict_svm(model, x)
    else:
        raise TypeError(f"explain_linear supports linear models, not {type(model).__name__}")
    if not x.nnz:
        return []
    terms = vocab.term_list
    contribs = model.W[label, x.indices] * x.values
    pairs = [(terms[i], float(c)) for i, c in zip(x.indices, contribs) if c != 0.0]
    pairs.sort(key=lambda tc: (-tc[1], tc[0]))
    return pairs[:k]
