"""Per-trait linear classifiers.

Training is deliberately dependency-free and deterministic: minority-class
oversampling by segment interpolation, full-batch subgradient descent on
the L2-regularized hinge loss with a fixed epoch schedule, and a sigmoid
calibration fit by Newton steps on a held-out split. Identical inputs,
config and seed produce byte-identical model files.
"""
from __future__ import annotations

import hashlib
import math
import os
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import BrandGaugeError, SchemaMismatchError
from .features import (
    FeatureVector,
    TfidfConfig,
    TfidfModel,
    apply_mask,
    schema_hash_for,
)

__all__ = [
    "TRAITS",
    "LabeledExample",
    "TrainConfig",
    "TraitModel",
    "TraitAssessment",
    "ModelBundle",
    "smote",
    "train_trait_model",
    "predict_confidence",
    "assess",
    "cross_validate",
    "high_fidelity_filter",
    "save_model",
    "load_model",
    "save_bundle",
    "load_bundle",
]

# canonical trait order: label-vector bit order and rank tie-breaking
TRAITS = ("sincerity", "excitement", "competence", "ruggedness", "sophistication")

DEFAULT_HIGH_FIDELITY_TAU = 0.95
_MODEL_FORMAT = "brandgauge-trait-model/1"
_BUNDLE_FORMAT = "brandgauge-bundle/1"


def trait_index(trait: str) -> int:
    try:
        return TRAITS.index(trait)
    except ValueError:
        raise BrandGaugeError(f"unknown trait: {trait!r}")


@dataclass(frozen=True)
class LabeledExample:
    features: FeatureVector
    labels: dict[str, Optional[int]]

    def __post_init__(self):
        known = {t: v for t, v in self.labels.items() if v is not None}
        if not known:
            raise BrandGaugeError("example carries no labels")
        for t in self.labels:
            trait_index(t)


@dataclass(frozen=True)
class TrainConfig:
    C: float = 1.0
    epochs: int = 300
    seed: int = 0
    block_mask: Optional[tuple[str, ...]] = None
    calibration_fraction: float = 0.2
    smote_k: int = 5


@dataclass(frozen=True)
class TraitModel:
    trait: str
    weights: np.ndarray
    bias: float
    mean: np.ndarray
    scale: np.ndarray
    calibration_a: float
    calibration_b: float
    block_mask: tuple[str, ...]
    layout: tuple[tuple[str, int], ...]
    layout_digest: str
    schema_hash: str
    tfidf: Optional[TfidfModel] = None
    category_ids: tuple[int, ...] = ()
    train_meta: dict = field(default_factory=dict)

    def __post_init__(self):
        width = sum(w for _, w in self.layout)
        if len(self.weights) != width:
            raise BrandGaugeError("weights length must equal schema width")
        if self.calibration_a <= 0:
            raise BrandGaugeError("calibration slope must be positive")


@dataclass(frozen=True)
class TraitAssessment:
    confidences: tuple[float, ...]
    label_vector: tuple[int, ...]
    rank_vector: tuple[int, ...]

    def label_bits(self) -> str:
        return "".join(str(b) for b in self.label_vector)


@dataclass(frozen=True)
class ModelBundle:
    models: dict[str, TraitModel]
    version: str

    def __post_init__(self):
        missing = [t for t in TRAITS if t not in self.models]
        if missing:
            raise BrandGaugeError(f"bundle is missing trait models: {missing}")
        digests = {m.layout_digest for m in self.models.values()}
        if len(digests) != 1:
            raise BrandGaugeError("bundle models disagree on feature layout")


def smote(
    minority: Sequence, k: int, n_synthetic: int, seed: int
) -> np.ndarray:
    """Synthetic minority points by interpolation toward one of each base
    point's k nearest minority neighbors; deterministic for a fixed seed."""
    X = np.asarray(
        [m.values if isinstance(m, FeatureVector) else m for m in minority],
        dtype=np.float64,
    )
    if X.ndim != 2 or X.shape[0] < 2:
        raise BrandGaugeError("cannot interpolate: need at least 2 minority points")
    if k < 1:
        raise BrandGaugeError("k must be >= 1")
    m = X.shape[0]
    k_eff = min(k, m - 1)
    if n_synthetic == 0:
        return np.empty((0, X.shape[1]), dtype=np.float64)

    d2 = np.sum((X[:, None, :] - X[None, :, :]) ** 2, axis=2)
    np.fill_diagonal(d2, np.inf)
    neighbors = np.argsort(d2, axis=1, kind="stable")[:, :k_eff]

    rng = np.random.default_rng(seed)
    out = np.empty((n_synthetic, X.shape[1]), dtype=np.float64)
    for i in range(n_synthetic):
        p = int(rng.integers(m))
        q = int(neighbors[p, int(rng.integers(k_eff))])
        lam = rng.random()
        out[i] = X[p] + lam * (X[q] - X[p])
    return out


def _standardize_fit(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mean = X.mean(axis=0)
    scale = X.std(axis=0)
    scale = np.where(scale > 0, scale, 1.0)
    return mean, scale


def _hinge_objective(X, y, w, b, lam) -> float:
    hinge = np.maximum(0.0, 1.0 - y * (X @ w + b))
    return 0.5 * lam * float(w @ w) + float(hinge.mean())


def _hinge_subgradient_fit(
    X: np.ndarray, y: np.ndarray, C: float, epochs: int
) -> tuple[np.ndarray, float]:
    """Full-batch subgradient descent on (lam/2)||w||^2 + mean hinge with
    lam = 1/(C n). Steps follow the Polyak rule with a zero objective
    target and a mild decay, which is scale-aware and needs no tuned
    learning rate; the lowest-objective iterate seen is returned so late
    oscillation cannot degrade the fit. Fully deterministic."""
    n, d = X.shape
    lam = 1.0 / (C * n)
    w = np.zeros(d, dtype=np.float64)
    b = 0.0
    best_w, best_b = w.copy(), b
    best_obj = _hinge_objective(X, y, w, b, lam)
    for t in range(epochs):
        margins = y * (X @ w + b)
        viol = margins < 1.0
        gw = lam * w
        gb = 0.0
        if viol.any():
            gw = gw - (y[viol, None] * X[viol]).sum(axis=0) / n
            gb = -float(y[viol].sum()) / n
        gnorm2 = float(gw @ gw) + gb * gb
        if gnorm2 <= 1e-30:
            break
        obj = _hinge_objective(X, y, w, b, lam)
        eta = obj / (gnorm2 * (1.0 + t / (epochs + 1.0)))
        w = w - eta * gw
        b = b - eta * gb
        obj = _hinge_objective(X, y, w, b, lam)
        if obj < best_obj:
            best_obj = obj
            best_w, best_b = w.copy(), b
    return best_w, float(best_b)


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))


def _fit_calibration(decisions: np.ndarray, y01: np.ndarray) -> tuple[float, float]:
    """Sigmoid calibration conf = sigma(A d + B) fit by Newton descent on
    cross-entropy with prior-regularized targets; A clamped positive so
    confidence stays strictly increasing in the decision value."""
    n_pos = int(y01.sum())
    n_neg = len(y01) - n_pos
    if n_pos == 0 or n_neg == 0:
        return 1.0, 0.0
    t_pos = (n_pos + 1.0) / (n_pos + 2.0)
    t_neg = 1.0 / (n_neg + 2.0)
    targets = np.where(y01 == 1, t_pos, t_neg)

    a, b = 1.0, 0.0
    for _ in range(100):
        p = _sigmoid(a * decisions + b)
        grad_common = p - targets
        ga = float((grad_common * decisions).sum())
        gb = float(grad_common.sum())
        wdiag = p * (1 - p)
        haa = float((wdiag * decisions * decisions).sum()) + 1e-12
        hab = float((wdiag * decisions).sum())
        hbb = float(wdiag.sum()) + 1e-12
        det = haa * hbb - hab * hab
        if abs(det) < 1e-18:
            break
        da = (hbb * ga - hab * gb) / det
        db = (haa * gb - hab * ga) / det
        a -= da
        b -= db
        a = max(a, 1e-6)
        if abs(da) < 1e-10 and abs(db) < 1e-10:
            break
    return float(a), float(b)


def _collect_xy(
    examples: Sequence[LabeledExample], trait: str, block_mask: Optional[Sequence[str]]
) -> tuple[np.ndarray, np.ndarray, FeatureVector]:
    labeled = [ex for ex in examples if ex.labels.get(trait) is not None]
    if not labeled:
        raise BrandGaugeError(f"no examples labeled for trait {trait!r}")
    hashes = {ex.features.schema_hash for ex in labeled}
    if len(hashes) != 1:
        raise SchemaMismatchError("examples were extracted under different schemas")
    fvs = [ex.features for ex in labeled]
    if block_mask is not None and tuple(sorted(set(block_mask))) != fvs[0].mask:
        fvs = [apply_mask(fv, block_mask) for fv in fvs]
    X = np.stack([fv.values for fv in fvs])
    if not np.all(np.isfinite(X)):
        raise BrandGaugeError("non-finite feature values")
    y = np.array([1 if ex.labels[trait] else -1 for ex in labeled], dtype=np.float64)
    return X, y, fvs[0]


def train_trait_model(
    examples: Sequence[LabeledExample],
    trait: str,
    config: TrainConfig = TrainConfig(),
    tfidf: Optional[TfidfModel] = None,
    category_ids: Optional[Sequence[int]] = None,
) -> TraitModel:
    """Standardize, oversample the minority class to parity on the training
    split only, fit the hinge-loss separator, then calibrate on a held-out
    20% split. Raises on single-class input or non-finite features."""
    trait_index(trait)
    X, y, proto = _collect_xy(examples, trait, config.block_mask)
    pos = np.flatnonzero(y > 0)
    neg = np.flatnonzero(y < 0)
    if len(pos) == 0 or len(neg) == 0:
        raise BrandGaugeError(f"single-class input for trait {trait!r}")

    rng = np.random.default_rng(config.seed)
    calib_idx: list[int] = []
    train_idx: list[int] = []
    for cls in (pos, neg):
        order = cls[rng.permutation(len(cls))]
        n_cal = int(math.floor(config.calibration_fraction * len(cls)))
        calib_idx.extend(order[:n_cal].tolist())
        train_idx.extend(order[n_cal:].tolist())
    train_idx.sort()
    calib_idx.sort()

    Xtr, ytr = X[train_idx], y[train_idx]
    if (ytr > 0).sum() == 0 or (ytr < 0).sum() == 0:
        # tiny datasets: train on everything, degenerate calibration
        Xtr, ytr = X, y
        calib_idx = []

    mean, scale = _standardize_fit(Xtr)
    Xs = (Xtr - mean) / scale

    n_pos = int((ytr > 0).sum())
    n_neg = int((ytr < 0).sum())
    minority_label = 1.0 if n_pos < n_neg else -1.0
    deficit = abs(n_pos - n_neg)
    if deficit > 0:
        minority_rows = Xs[ytr == minority_label]
        if len(minority_rows) >= 2:
            synth = smote(
                minority_rows,
                k=min(config.smote_k, len(minority_rows) - 1),
                n_synthetic=deficit,
                seed=config.seed,
            )
            Xs = np.vstack([Xs, synth])
            ytr = np.concatenate([ytr, np.full(deficit, minority_label)])

    w, b = _hinge_subgradient_fit(Xs, ytr, config.C, config.epochs)

    if calib_idx:
        Xcal = (X[calib_idx] - mean) / scale
        decisions = Xcal @ w + b
        y01 = (y[calib_idx] > 0).astype(np.float64)
        cal_a, cal_b = _fit_calibration(decisions, y01)
    else:
        cal_a, cal_b = 1.0, 0.0

    train_conf = _sigmoid(cal_a * (((X - mean) / scale) @ w + b) + cal_b)
    train_labels = (train_conf >= 0.5).astype(int)
    true01 = (y > 0).astype(int)
    f1 = _f1(true01, train_labels)

    mask = config.block_mask if config.block_mask is not None else proto.mask
    mask = tuple(sorted(set(mask)))
    return TraitModel(
        trait=trait,
        weights=w,
        bias=float(b),
        mean=mean,
        scale=scale,
        calibration_a=cal_a,
        calibration_b=cal_b,
        block_mask=mask,
        layout=proto.layout,
        layout_digest=proto.layout_digest,
        schema_hash=schema_hash_for(proto.layout_digest, mask),
        tfidf=tfidf,
        category_ids=tuple(category_ids or ()),
        train_meta={"seed": config.seed, "folds": 0, "f1": round(f1, 6)},
    )


def _f1(y_true01: np.ndarray, y_pred01: np.ndarray) -> float:
    tp = int(((y_true01 == 1) & (y_pred01 == 1)).sum())
    fp = int(((y_true01 == 0) & (y_pred01 == 1)).sum())
    fn = int(((y_true01 == 1) & (y_pred01 == 0)).sum())
    if tp == 0:
        return 0.0
    precision = tp / (tp + fp)
    recall = tp / (tp + fn)
    return 2 * precision * recall / (precision + recall)


def _conform(model: TraitModel, fv: FeatureVector) -> FeatureVector:
    if fv.schema_hash == model.schema_hash:
        return fv
    if fv.layout_digest == model.layout_digest and set(model.block_mask) <= set(fv.mask):
        return apply_mask(fv, model.block_mask)
    raise SchemaMismatchError(
        f"feature schema {fv.schema_hash[:12]} does not match model "
        f"{model.schema_hash[:12]} for trait {model.trait}"
    )


def decision_value(model: TraitModel, fv: FeatureVector) -> float:
    fv = _conform(model, fv)
    xs = (fv.values - model.mean) / model.scale
    return float(xs @ model.weights + model.bias)


def predict_confidence(model: TraitModel, fv: FeatureVector) -> float:
    """Calibrated confidence in (0,1); label is confidence >= 0.5."""
    d = decision_value(model, fv)
    return float(_sigmoid(np.array([model.calibration_a * d + model.calibration_b]))[0])


def assess(
    models: dict[str, TraitModel], fv: FeatureVector, label_threshold: float = 0.5
) -> TraitAssessment:
    """Score all five traits and derive the label and rank vectors; rank
    ties break by canonical trait order."""
    missing = [t for t in TRAITS if t not in models]
    if missing:
        raise BrandGaugeError(f"missing trait models: {missing}")
    confidences = tuple(predict_confidence(models[t], fv) for t in TRAITS)
    label_vector = tuple(1 if c >= label_threshold else 0 for c in confidences)
    order = sorted(range(len(TRAITS)), key=lambda i: (-confidences[i], i))
    rank_vector = [0] * len(TRAITS)
    for position, i in enumerate(order, start=1):
        rank_vector[i] = position
    return TraitAssessment(confidences, label_vector, tuple(rank_vector))


@dataclass(frozen=True)
class CVResult:
    trait: str
    folds: int
    precision: tuple[float, ...]
    recall: tuple[float, ...]
    f1: tuple[float, ...]

    @property
    def mean_precision(self) -> float:
        return sum(self.precision) / len(self.precision)

    @property
    def mean_recall(self) -> float:
        return sum(self.recall) / len(self.recall)

    @property
    def mean_f1(self) -> float:
        return sum(self.f1) / len(self.f1)


def cross_validate(
    examples: Sequence[LabeledExample],
    trait: str,
    folds: int = 7,
    config: TrainConfig = TrainConfig(),
) -> CVResult:
    """Stratified k-fold; oversampling happens inside the training folds
    only. Per-fold precision/recall/F1, averaged by the caller via means."""
    if folds < 1:
        raise BrandGaugeError("folds must be >= 1")
    labeled = [ex for ex in examples if ex.labels.get(trait) is not None]
    pos = [i for i, ex in enumerate(labeled) if ex.labels[trait]]
    neg = [i for i, ex in enumerate(labeled) if not ex.labels[trait]]
    if folds > len(pos) or folds > len(neg):
        raise BrandGaugeError(
            f"folds={folds} exceeds class counts (pos={len(pos)}, neg={len(neg)})"
        )

    rng = np.random.default_rng(config.seed)
    fold_of = {}
    for cls in (pos, neg):
        order = [cls[j] for j in rng.permutation(len(cls))]
        for j, idx in enumerate(order):
            fold_of[idx] = j % folds

    precisions, recalls, f1s = [], [], []
    for f in range(folds):
        train = [labeled[i] for i in range(len(labeled)) if fold_of[i] != f]
        test = [labeled[i] for i in range(len(labeled)) if fold_of[i] == f]
        model = train_trait_model(train, trait, config)
        tp = fp = fn = tn = 0
        for ex in test:
            pred = 1 if predict_confidence(model, ex.features) >= 0.5 else 0
            true = int(bool(ex.labels[trait]))
            if pred and true:
                tp += 1
            elif pred and not true:
                fp += 1
            elif not pred and true:
                fn += 1
            else:
                tn += 1
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        precisions.append(precision)
        recalls.append(recall)
        f1s.append(f1)
    return CVResult(trait, folds, tuple(precisions), tuple(recalls), tuple(f1s))


def high_fidelity_filter(
    assessments: Sequence[tuple[object, TraitAssessment]],
    tau: float = DEFAULT_HIGH_FIDELITY_TAU,
) -> list[tuple[object, TraitAssessment]]:
    """Keep items whose best trait confidence clears tau."""
    if not 0.0 < tau < 1.0:
        raise BrandGaugeError("tau must be in (0, 1)")
    return [(doc, a) for doc, a in assessments if max(a.confidences) >= tau]


# ---------------------------------------------------------------------------
# model / bundle files: text key-value plus space-separated arrays


def _fmt_array(arr: np.ndarray) -> str:
    return " ".join(repr(float(x)) for x in arr)


def _parse_array(text: str) -> np.ndarray:
    if not text.strip():
        return np.zeros(0, dtype=np.float64)
    return np.array([float(x) for x in text.split()], dtype=np.float64)


def save_model(model: TraitModel, path: str) -> None:
    lines = [
        f"format: {_MODEL_FORMAT}",
        f"trait: {model.trait}",
        f"schema_hash: {model.schema_hash}",
        f"layout_digest: {model.layout_digest}",
        "layout: " + ",".join(f"{n}:{w}" for n, w in model.layout),
        "block_mask: " + ",".join(model.block_mask),
        f"bias: {model.bias!r}",
        f"calibration_a: {model.calibration_a!r}",
        f"calibration_b: {model.calibration_b!r}",
        f"meta_seed: {model.train_meta.get('seed', 0)}",
        f"meta_folds: {model.train_meta.get('folds', 0)}",
        f"meta_f1: {model.train_meta.get('f1', 0.0)!r}",
        "category_ids: " + ",".join(str(c) for c in model.category_ids),
        f"standardize_mean: {_fmt_array(model.mean)}",
        f"standardize_scale: {_fmt_array(model.scale)}",
        f"weights: {_fmt_array(model.weights)}",
        f"tfidf_present: {0 if model.tfidf is None else 1}",
    ]
    if model.tfidf is not None:
        lines += [
            f"tfidf_min_df: {model.tfidf.config.min_df}",
            f"tfidf_max_features: {model.tfidf.config.max_features}",
            f"tfidf_ngram_max: {model.tfidf.config.ngram_max}",
            f"tfidf_stopwords_id: {model.tfidf.config.stopwords_id}",
        ]
        for term in sorted(model.tfidf.vocabulary):
            idx = model.tfidf.vocabulary[term]
            lines.append(f"tfidf_term: {term}\t{idx}\t{float(model.tfidf.idf[idx])!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load_model(path: str) -> TraitModel:
    fields: dict[str, str] = {}
    vocab: dict[str, int] = {}
    idf_by_idx: dict[int, float] = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            raw = raw.rstrip("\n")
            if not raw:
                continue
            key, _, value = raw.partition(": ")
            if key == "tfidf_term":
                term, idx_s, idf_s = value.split("\t")
                vocab[term] = int(idx_s)
                idf_by_idx[int(idx_s)] = float(idf_s)
            else:
                fields[key] = value
    if fields.get("format") != _MODEL_FORMAT:
        raise BrandGaugeError(f"not a trait model file: {path}")
    layout = tuple(
        (part.split(":")[0], int(part.split(":")[1]))
        for part in fields["layout"].split(",")
    )
    tfidf = None
    if fields.get("tfidf_present") == "1":
        idf = np.array([idf_by_idx[i] for i in range(len(vocab))], dtype=np.float64)
        tfidf = TfidfModel(
            vocab,
            idf,
            TfidfConfig(
                min_df=int(fields["tfidf_min_df"]),
                max_features=int(fields["tfidf_max_features"]),
                ngram_max=int(fields["tfidf_ngram_max"]),
                stopwords_id=fields["tfidf_stopwords_id"],
            ),
        )
    category_ids = tuple(
        int(c) for c in fields["category_ids"].split(",") if c.strip()
    )
    return TraitModel(
        trait=fields["trait"],
        weights=_parse_array(fields["weights"]),
        bias=float(fields["bias"]),
        mean=_parse_array(fields["standardize_mean"]),
        scale=_parse_array(fields["standardize_scale"]),
        calibration_a=float(fields["calibration_a"]),
        calibration_b=float(fields["calibration_b"]),
        block_mask=tuple(fields["block_mask"].split(",")),
        layout=layout,
        layout_digest=fields["layout_digest"],
        schema_hash=fields["schema_hash"],
        tfidf=tfidf,
        category_ids=category_ids,
        train_meta={
            "seed": int(fields["meta_seed"]),
            "folds": int(fields["meta_folds"]),
            "f1": float(fields["meta_f1"]),
        },
    )


def save_bundle(models: dict[str, TraitModel], directory: str, name: str = "flcs") -> str:
    """Write one model file per trait plus the bundle manifest; returns the
    manifest path. The version is a digest of the five model files."""
    os.makedirs(directory, exist_ok=True)
    h = hashlib.sha256()
    rel_paths = {}
    for trait in TRAITS:
        if trait not in models:
            raise BrandGaugeError(f"missing trait model: {trait}")
        rel = f"{name}.{trait}.model"
        save_model(models[trait], os.path.join(directory, rel))
        rel_paths[trait] = rel
        with open(os.path.join(directory, rel), "rb") as fh:
            h.update(fh.read())
    manifest = os.path.join(directory, f"{name}.bundle")
    with open(manifest, "w", encoding="utf-8") as fh:
        fh.write(f"format: {_BUNDLE_FORMAT}\n")
        fh.write(f"version: {h.hexdigest()}\n")
        for trait in TRAITS:
            fh.write(f"model: {trait}\t{rel_paths[trait]}\n")
    return manifest


def load_bundle(manifest_path: str) -> ModelBundle:
    base = os.path.dirname(os.path.abspath(manifest_path))
    version = ""
    models: dict[str, TraitModel] = {}
    with open(manifest_path, encoding="utf-8") as fh:
        for raw in fh:
            key, _, value = raw.rstrip("\n").partition(": ")
            if key == "format" and value != _BUNDLE_FORMAT:
                raise BrandGaugeError(f"not a bundle file: {manifest_path}")
            elif key == "version":
                version = value
            elif key == "model":
                trait, _, rel = value.partition("\t")
                models[trait] = load_model(os.path.join(base, rel))
    return ModelBundle(models, version)
