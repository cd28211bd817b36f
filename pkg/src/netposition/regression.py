"""Log-log OLS, the three-regression design, and the model difference tests.

Contribution is regressed on position features under three designs -
global measures only, local measures only, and both - with tenure and
profession entering every model as controls. All continuous columns get a
log(x + offset) transform (offset 1 by default, since counts contain
zeros). The designs are compared with nested partial F-tests against the
combined model and with AIC/BIC for the non-nested global-vs-local pair.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import pandas as pd
import scipy.linalg
import scipy.stats

GLOBAL_COLUMNS = ("closeness", "betweenness", "coreness")
LOCAL_COLUMNS = ("local_centrality", "local_spanning")
CONTROL_NUMERIC = ("tenure_days",)
REQUIRED_COLUMNS = ("contribution",) + GLOBAL_COLUMNS + LOCAL_COLUMNS + \
    CONTROL_NUMERIC + ("profession",)

_TINY_RSS = 1e-12


class RankDeficiencyError(ValueError):
    """Design matrix is not full column rank."""

    def __init__(self, columns):
        self.columns = list(columns)
        super().__init__(f"design matrix is rank deficient; collinear column(s): "
                         f"{', '.join(self.columns)}")


@dataclass(frozen=True)
class RegressionResult:
    names: tuple[str, ...]
    coef: np.ndarray
    stderr: np.ndarray
    residuals: np.ndarray
    rss: float
    tss: float
    r_squared: float
    adj_r_squared: float
    loglik: float
    aic: float
    bic: float
    n: int
    p: int

    def coef_table(self) -> list[dict]:
        return [{"term": name, "coef": float(c), "stderr": float(s)}
                for name, c, s in zip(self.names, self.coef, self.stderr)]

    def summary_dict(self) -> dict:
        return {
            "coefficients": self.coef_table(),
            "r_squared": self.r_squared,
            "adj_r_squared": self.adj_r_squared,
            "rss": self.rss,
            "loglik": self.loglik,
            "aic": self.aic,
            "bic": self.bic,
            "n": self.n,
            "p": self.p,
        }


@dataclass(frozen=True)
class ModelComparison:
    test: str
    statistic: float
    df: tuple[int, int] | None
    p_value: float | None
    aic_delta: float
    bic_delta: float
    preferred: str

    def summary_dict(self) -> dict:
        return {
            "test": self.test,
            "statistic": self.statistic,
            "df": list(self.df) if self.df is not None else None,
            "p_value": self.p_value,
            "aic_delta": self.aic_delta,
            "bic_delta": self.bic_delta,
            "preferred": self.preferred,
        }


def log1_transform(x, offset: float = 1.0) -> np.ndarray:
    """Elementwise natural log(x + offset); rejects negative input."""
    if offset <= 0:
        raise ValueError(f"log offset must be positive, got {offset}")
    arr = np.asarray(x, dtype=np.float64)
    if arr.size and arr.min() < 0:
        raise ValueError("log1_transform requires non-negative input")
    return np.log(arr + offset)


def dummy_code(values) -> tuple[np.ndarray, list[str], str]:
    """k-1 indicator columns for a categorical column.

    The lexicographically smallest category is the reference level and gets
    no column; remaining categories produce one 0/1 column each, in sorted
    order. A single-category column yields zero columns (noted by caller).
    Returns (matrix, column names, reference category).
    """
    values = list(values)
    if not values:
        raise ValueError("dummy_code needs at least one value")
    categories = sorted(set(values))
    reference = categories[0]
    rest = categories[1:]
    matrix = np.zeros((len(values), len(rest)), dtype=np.float64)
    index = {c: j for j, c in enumerate(rest)}
    for i, v in enumerate(values):
        j = index.get(v)
        if j is not None:
            matrix[i, j] = 1.0
    names = [f"profession={c}" for c in rest]
    return matrix, names, reference


def ols_fit(X: np.ndarray, y: np.ndarray, names=None) -> RegressionResult:
    """Least squares via column-pivoted QR.

    `X` is the full design matrix including the intercept column. Raises
    RankDeficiencyError naming the collinear columns, and ValueError when
    there are not more rows than parameters. The Gaussian log-likelihood
    treats the error variance as one more fitted parameter, so
    AIC = 2(p+1) - 2 logL and BIC = (p+1) ln n - 2 logL.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64).ravel()
    if X.ndim != 2:
        raise ValueError("X must be 2-dimensional")
    n, p = X.shape
    if y.size != n:
        raise ValueError(f"X has {n} rows but y has {y.size}")
    names = tuple(names) if names is not None else tuple(f"x{j}" for j in range(p))
    if len(names) != p:
        raise ValueError(f"{p} columns but {len(names)} names")
    if n <= p:
        raise ValueError(f"need more observations than parameters (n={n}, p={p})")

    Q, R, piv = scipy.linalg.qr(X, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    tol = max(n, p) * np.finfo(np.float64).eps * (diag[0] if diag.size else 0.0)
    rank = int(np.sum(diag > tol))
    if rank < p:
        raise RankDeficiencyError(names[j] for j in piv[rank:])

    qty = Q.T @ y
    coef_piv = scipy.linalg.solve_triangular(R, qty)
    coef = np.empty(p, dtype=np.float64)
    coef[piv] = coef_piv

    residuals = y - X @ coef
    rss = float(residuals @ residuals)
    centered = y - y.mean()
    tss = float(centered @ centered)
    if tss <= _TINY_RSS:
        r2 = 0.0  # constant response: nothing to explain
    else:
        r2 = min(max(1.0 - rss / tss, 0.0), 1.0)
    adj_r2 = 1.0 - (1.0 - r2) * (n - 1) / (n - p)

    if rss <= _TINY_RSS:
        loglik = math.inf
        aic = -math.inf
        bic = -math.inf
    else:
        loglik = -0.5 * n * (math.log(2.0 * math.pi) + math.log(rss / n) + 1.0)
        aic = 2.0 * (p + 1) - 2.0 * loglik
        bic = (p + 1) * math.log(n) - 2.0 * loglik

    sigma2 = rss / (n - p)
    rinv = scipy.linalg.solve_triangular(R, np.eye(p))
    cov_piv = (rinv @ rinv.T) * sigma2
    stderr = np.empty(p, dtype=np.float64)
    stderr[piv] = np.sqrt(np.diag(cov_piv))

    return RegressionResult(names=names, coef=coef, stderr=stderr, residuals=residuals,
                            rss=rss, tss=tss, r_squared=r2, adj_r_squared=adj_r2,
                            loglik=loglik, aic=aic, bic=bic, n=n, p=p)


def nested_f_test(restricted: RegressionResult, full: RegressionResult,
                  labels: tuple[str, str] = ("restricted", "full"),
                  alpha: float = 0.05) -> ModelComparison:
    """Partial F-test for a restricted model against a full model.

    The restricted model's columns must be a strict subset of the full
    model's and both fits must cover the same rows.
    """
    if restricted.n != full.n:
        raise ValueError(f"models are not nested: fitted on {restricted.n} vs {full.n} rows")
    r_cols, f_cols = set(restricted.names), set(full.names)
    if not (r_cols < f_cols):
        raise ValueError("models are not nested: restricted columns must be a strict "
                         "subset of the full model's columns")
    df1 = full.p - restricted.p
    df2 = full.n - full.p
    gain = max(restricted.rss - full.rss, 0.0)
    if full.rss <= _TINY_RSS:
        stat = 0.0 if gain <= _TINY_RSS else math.inf
    else:
        stat = (gain / df1) / (full.rss / df2)
    p_value = float(scipy.stats.f.sf(stat, df1, df2))
    preferred = labels[1] if p_value < alpha else labels[0]
    return ModelComparison(
        test=f"nested_f[{labels[0]} -> {labels[1]}]",
        statistic=float(stat), df=(df1, df2), p_value=p_value,
        aic_delta=full.aic - restricted.aic, bic_delta=full.bic - restricted.bic,
        preferred=preferred)


def information_criteria_comparison(a: RegressionResult, b: RegressionResult,
                                    labels: tuple[str, str]) -> ModelComparison:
    """AIC/BIC comparison for a non-nested model pair (lower wins)."""
    aic_delta = b.aic - a.aic
    bic_delta = b.bic - a.bic
    if a.aic != b.aic:
        preferred = labels[0] if a.aic < b.aic else labels[1]
    else:
        preferred = labels[0] if a.bic <= b.bic else labels[1]
    return ModelComparison(test=f"aic_bic[{labels[0]} vs {labels[1]}]",
                           statistic=aic_delta, df=None, p_value=None,
                           aic_delta=aic_delta, bic_delta=bic_delta,
                           preferred=preferred)


def _validate_table(features: pd.DataFrame) -> None:
    missing = [c for c in REQUIRED_COLUMNS if c not in features.columns]
    if missing:
        raise ValueError(f"feature table lacks column(s): {', '.join(missing)}")
    numeric = [c for c in REQUIRED_COLUMNS if c != "profession"]
    block = features[list(numeric)]
    if block.isna().any().any() or features["profession"].isna().any():
        bad = [c for c in REQUIRED_COLUMNS if features[c].isna().any()]
        raise ValueError(f"feature table has missing values in: {', '.join(bad)}")
    if (block < 0).any().any():
        bad = [c for c in numeric if (features[c] < 0).any()]
        raise ValueError(f"feature table has negative values in: {', '.join(bad)}")


def _design(features: pd.DataFrame, feature_cols, dummies, dummy_names,
            offset: float) -> tuple[np.ndarray, list[str]]:
    n = len(features)
    columns = [np.ones(n)]
    names = ["intercept"]
    for col in feature_cols + list(CONTROL_NUMERIC):
        columns.append(log1_transform(features[col].to_numpy(), offset))
        names.append(col)
    X = np.column_stack(columns + [dummies]) if dummy_names else np.column_stack(columns)
    return X, names + dummy_names


def compare_three(features: pd.DataFrame, *, log_offset: float = 1.0,
                  alpha: float = 0.05) -> dict:
    """Fit the global-only, local-only, and combined regressions and compare.

    Returns a JSON-ready report: per-model coefficient tables and fit
    statistics, the two nested F-tests against the combined model, the
    AIC/BIC comparison of the non-nested global/local pair, and an overall
    preferred-model call (the smaller design when it alone survives the
    F-tests, otherwise decided by AIC).
    """
    _validate_table(features)
    y = log1_transform(features["contribution"].to_numpy(), log_offset)
    dummies, dummy_names, reference = dummy_code(features["profession"].astype(str))

    fits: dict[str, RegressionResult] = {}
    for label, cols in (("global", list(GLOBAL_COLUMNS)),
                        ("local", list(LOCAL_COLUMNS)),
                        ("both", list(GLOBAL_COLUMNS + LOCAL_COLUMNS))):
        X, names = _design(features, cols, dummies, dummy_names, log_offset)
        fits[label] = ols_fit(X, y, names)

    comparisons = [
        nested_f_test(fits["global"], fits["both"], labels=("global", "both"), alpha=alpha),
        nested_f_test(fits["local"], fits["both"], labels=("local", "both"), alpha=alpha),
        information_criteria_comparison(fits["global"], fits["local"],
                                        labels=("global", "local")),
    ]

    p_global = comparisons[0].p_value
    p_local = comparisons[1].p_value
    if p_local > alpha and p_global <= alpha:
        preferred = "local"
    elif p_global > alpha and p_local <= alpha:
        preferred = "global"
    elif p_local > alpha and p_global > alpha:
        preferred = "local" if fits["local"].aic <= fits["global"].aic else "global"
    else:
        preferred = "both"

    metadata = {
        "dependent": "contribution",
        "transform": f"log(x + {log_offset:g}) on all continuous columns",
        "log_offset": log_offset,
        "alpha": alpha,
        "controls": list(CONTROL_NUMERIC) + ["profession"],
        "profession_reference": reference,
        "betweenness_normalization": "unnormalized, unordered pairs, endpoints excluded",
    }
    if not dummy_names:
        metadata["note"] = "profession has a single category; no dummy columns"

    return {
        "models": {label: fit.summary_dict() for label, fit in fits.items()},
        "comparisons": [c.summary_dict() for c in comparisons],
        "preferred_model": preferred,
        "metadata": metadata,
    }


def coefficients_frame(report: dict) -> pd.DataFrame:
    """Flatten a compare_three report into a model/term/coef/stderr table."""
    rows = []
    for model, summary in report["models"].items():
        for entry in summary["coefficients"]:
            rows.append({"model": model, "term": entry["term"],
                         "coef": entry["coef"], "stderr": entry["stderr"]})
    return pd.DataFrame(rows, columns=["model", "term", "coef", "stderr"])
