"""Deterministic matplotlib rendering of run traces and curve snapshots."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

# reproducible SVG output: fixed hash salt, no embedded timestamps
matplotlib.rcParams["svg.hashsalt"] = "curveflow"

_SVG_METADATA = {"Date": None, "Creator": "curveflow"}


def plot_run(trace, snapshots, limit, out_path):
    """Write an SVG with the log-scale energy series and snapshot overlay.

    Parameters
    ----------
    trace : list of TraceRecord
    snapshots : list of (t, points) pairs, may be empty
    limit : CircleLimit or None, drawn dashed over the snapshots
    out_path : destination file (.svg)
    """
    fig, (ax_series, ax_shapes) = plt.subplots(1, 2, figsize=(11, 4.5))

    ts = np.array([rec.t for rec in trace])
    floor = 1e-300
    ax_series.semilogy(ts, np.maximum([rec.I_m1 for rec in trace], floor), label="I_-1")
    for ell in range(len(trace[0].I)):
        ax_series.semilogy(
            ts, np.maximum([rec.I[ell] for rec in trace], floor), label=f"I_{ell}"
        )
    ax_series.set_xlabel("t")
    ax_series.set_ylabel("scale-invariant energies")
    ax_series.legend(loc="best", fontsize=8)
    ax_series.grid(True, which="both", alpha=0.3)

    for t, pts in snapshots:
        closed = np.vstack([pts, pts[:1]])
        ax_shapes.plot(closed[:, 0], closed[:, 1], lw=0.9, label=f"t={t:g}")
    if limit is not None:
        phi = np.linspace(0, 2 * np.pi, 512)
        ax_shapes.plot(
            limit.c_inf[0] + limit.r_inf * np.cos(phi),
            limit.c_inf[1] + limit.r_inf * np.sin(phi),
            "k--",
            lw=1.2,
            label="limit circle",
        )
    ax_shapes.set_aspect("equal")
    if snapshots or limit is not None:
        ax_shapes.legend(loc="best", fontsize=7)
    ax_shapes.grid(True, alpha=0.3)

    fig.tight_layout()
    fig.savefig(out_path, format="svg", metadata=dict(_SVG_METADATA))
    plt.close(fig)
