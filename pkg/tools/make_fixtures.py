"""Regenerate the diagram files under src/higher_skein/data."""

from pathlib import Path

from higher_skein.diagram import (
    DATA_DIR,
    braid_closure,
    eight_t_closures,
    eight_t_diagrams_from_braids,
    format_diagram,
    make_G,
    parse_braid,
    unknot,
    unlink,
)

BRAIDS = {
    "trefoil_braid": ("1 1 1", 2),
    "figure8": ("1 -2 1 -2", 3),
}


def write(path, d, name, note=None):
    d = type(d)(d.crossings, d.free_loops, name=name)
    text = format_diagram(d)
    if note:
        text = f"# {note}\n" + text
    Path(path).write_text(text, encoding="utf-8")


def main():
    links = DATA_DIR / "links"
    links.mkdir(parents=True, exist_ok=True)
    write(links / "unknot.link", unknot(), "unknot")
    write(links / "unlink2.link", unlink(2), "unlink2")
    write(links / "unlink3.link", unlink(3), "unlink3")
    for name, (word, n) in BRAIDS.items():
        write(links / f"{name}.link", braid_closure(parse_braid(word), n), name,
              f"closure of the braid {word} on {n} strands")
    gdir = DATA_DIR / "G"
    gdir.mkdir(parents=True, exist_ok=True)
    for n in range(7):
        for l in range(n + 1):
            if l + n <= 6:
                write(gdir / f"G{l}_{n}.link", make_G(l, n), f"G{l}_{n}")
    edir = DATA_DIR / "eightt"
    for ident, word in eight_t_closures().items():
        for k, d in enumerate(eight_t_diagrams_from_braids(ident), 1):
            write(edir / f"{ident}_t{k}.link", d, f"{ident}_t{k}",
                  f"3-strand word t{k} followed by completion '{word}', closed")


if __name__ == "__main__":
    main()
