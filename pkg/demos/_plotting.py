"""Optional matplotlib output for the demos; they print their results either way."""

from pathlib import Path

OUT = Path(__file__).with_name("out")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:  # demos still run, just without figures
    plt = None


def save(fig, name):
    OUT.mkdir(exist_ok=True)
    path = OUT / name
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    print(f"figure: {path}")
