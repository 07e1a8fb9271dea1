"""
Schematic renderings of schemes and diagrams for ``omega emit``.

ascii:  tops on one row, bottoms staggered between them on the next.
tikz:   the zig-zag walk of the scheme as a polyline, top labels at the
        peaks and bottom labels at the valleys.
"""
from schemes.pasting import table_to_zigzag
from schemes.strict import PastingDiagram

FORMATS = ("ascii", "tikz")


def _labels(value):
    """(shape, top labels, bottom labels)"""
    if isinstance(value, PastingDiagram):
        return value.shape, [str(c) for c in value.tops], [str(c) for c in value.bottoms]
    return value, [str(k) for k in value.tops], [str(b) for b in value.bottoms]


def render_ascii(value):
    shape, tops, bottoms = _labels(value)
    width = max(len(label) for label in tops + bottoms)
    upper = []
    lower = []
    for i, label in enumerate(tops):
        upper.append(label.center(width))
        lower.append(" " * width)
        if i < len(bottoms):
            upper.append(" " * width)
            lower.append(bottoms[i].center(width))
    lines = [" ".join(upper).rstrip(), " ".join(lower).rstrip()]
    if isinstance(value, PastingDiagram):
        lines.append(f"shape {shape}")
    return "\n".join(line for line in lines if line)


def render_tikz(value):
    shape, tops, bottoms = _labels(value)
    walk = table_to_zigzag(shape.scheme)
    path = " -- ".join(f"({x},{y})" for x, y in enumerate(walk))
    lines = [
        r"\begin{tikzpicture}[x=0.5cm, y=0.5cm]",
        f"  \\draw {path};",
    ]
    peaks, valleys = iter(tops), iter(bottoms)
    for x in range(1, len(walk) - 1):
        before, here, after = walk[x - 1], walk[x], walk[x + 1]
        if before != after:
            continue
        if here > before:
            lines.append(f"  \\node[above] at ({x},{here}) {{${next(peaks)}$}};")
        else:
            lines.append(f"  \\node[below] at ({x},{here}) {{${next(valleys)}$}};")
    lines.append(r"\end{tikzpicture}")
    return "\n".join(lines)


def render(value, fmt="ascii"):
    if fmt == "tikz":
        return render_tikz(value)
    return render_ascii(value)
