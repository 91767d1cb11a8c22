"""Figures written next to the JSON report by ``check ... --figures DIR``."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from . import elliptic, galois, qseries, squares  # noqa: E402

STYLE = {
    "figure.figsize": (7.0, 4.3),
    "figure.dpi": 120,
    "font.size": 10,
    "axes.labelsize": 10,
    "axes.titlesize": 11,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}

RESIDUE_COLORS = {1: "tab:blue", 3: "tab:orange", 5: "tab:green", 7: "tab:red"}


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_hasse_traces(max_prime: int, path: Path) -> Path:
    """a_ell(E) / (2 sqrt(ell)) against ell, coloured by ell mod 8."""
    primes = squares.odd_primes_up_to(max_prime)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        for res, color in RESIDUE_COLORS.items():
            ps = [p for p in primes if p % 8 == res]
            ax.scatter(ps, [elliptic.trace_a(p) / (2 * math.sqrt(p)) for p in ps], s=4, color=color,
                       label=f"ell = {res} mod 8")
        ax.axhline(1, color="0.6", lw=0.8, ls="--")
        ax.axhline(-1, color="0.6", lw=0.8, ls="--")
        ax.set_xlabel("ell")
        ax.set_ylabel("a_ell(E) / 2 sqrt(ell)")
        ax.set_title("Normalized Frobenius traces of y^2 = x^3 + x^2 + x + 1")
        ax.legend(markerscale=3, ncol=4, loc="lower center")
        return _save(fig, path)


def plot_congruence_residues(bound: int, path: Path) -> Path:
    """a_n(f) mod 4 and a_n(g) mod 4 for 1 <= n <= bound."""
    f = qseries.build_f(bound + 1)
    g = elliptic.g_coefficients(bound)
    ns = list(range(1, bound + 1))
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        ax.vlines(ns, 0, [f[n] % 4 for n in ns], color="tab:blue", lw=1.2, label="a_n(f) mod 4")
        ax.scatter(ns, [g[n] % 4 for n in ns], s=9, color="tab:red", zorder=3, label="a_n(g) mod 4")
        ax.set_yticks(range(4))
        ax.set_xlabel("n")
        ax.set_ylabel("residue mod 4")
        ax.set_title("Coefficients of f and of the level-128 newform g mod 4")
        ax.legend(loc="upper right")
        return _save(fig, path)


def plot_frobenius_traces(max_prime: int, path: Path) -> Path:
    """Prime counts per Frobenius class in K and L, annotated with the mod-4 trace."""
    rho, rho_p = galois.build_rho(), galois.build_rho_prime()
    primes = squares.odd_primes_up_to(max_prime)
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, 2, sharey=True)
        for ax, (label, classify, rep) in zip(
            axes, [("K", galois.frobenius_class_K, rho), ("L", galois.frobenius_class_L, rho_p)]
        ):
            counts: dict[str, int] = {}
            tr: dict[str, int] = {}
            for p in primes:
                cls = classify(p)
                key = str(cls)
                counts[key] = counts.get(key, 0) + 1
                tr[key] = galois.trace_mod4(rep, cls)
            keys = sorted(counts)
            bars = ax.bar(keys, [counts[k] for k in keys], color=["tab:blue" if tr[k] == 2 else "tab:gray" for k in keys])
            for bar, k in zip(bars, keys):
                ax.annotate(f"tr={tr[k]}", (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                            ha="center", va="bottom", fontsize=8)
            ax.set_title(f"Frob classes in Gal({label}/Q), {rep.name}")
            ax.tick_params(axis="x", rotation=30)
        axes[0].set_ylabel(f"odd primes <= {max_prime}")
        return _save(fig, path)


def render_figures(directory, max_prime: int, bound: int) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    return [
        plot_hasse_traces(max_prime, out / "hasse_traces.png"),
        plot_congruence_residues(min(bound, 256), out / "congruence_residues.png"),
        plot_frobenius_traces(max_prime, out / "frobenius_traces.png"),
    ]
