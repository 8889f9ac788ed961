"""Recompute the worked examples shipped in corpus/ and print a short digest of each."""

from pathlib import Path

from evolkit.cli import parse_algebra_document
from evolkit.gscalar import gs
from evolkit.radical import jacobson_radical, maximal_modular_ideals
from evolkit.spectra import m_semisimple_check, m_spectrum, spectrally_semisimple_check, spectrum

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def fmt(points):
    return "{" + ", ".join(str(p) for p in points) + "}"


def main():
    for path in sorted(CORPUS.glob("*.json")):
        A = parse_algebra_document(path.read_text())
        rad = jacobson_radical(A)
        print(f"{path.stem}  (n={A.n})")
        print(f"  modular indexes {sorted(rad.modular_indexes)}, radical {sorted(rad.radical_support)}, {rad.classification}")
        for M in maximal_modular_ideals(A):
            print(f"  maximal modular ideal on {sorted(M.support)} with unit {M.modular_unit}")
        m, s = m_semisimple_check(A), spectrally_semisimple_check(A)
        print(f"  m-semisimple: {m.value}   spectrally semisimple: {s.value}")
        for i in A.index_range():
            a = A.square(i)
            if a.is_zero():
                continue
            sm, sp = m_spectrum(A, a), spectrum(A, a)
            extra = f" + {len(sm.numeric_points)} numeric" if sm.numeric_points else ""
            print(f"  e{i}^2 = {a}: m-spectrum {fmt(sm.exact_points)}{extra}, spectrum {fmt(sp.exact_points)}")
        print()

    A = parse_algebra_document((CORPUS / "radical_2x2.json").read_text())
    a = A.element([gs(3), gs(2)])
    print("radical_2x2, a = 3e1 + 2e2")
    print(f"  m-spectrum {fmt(m_spectrum(A, a).exact_points)}, spectrum {fmt(spectrum(A, a).exact_points)}")


if __name__ == "__main__":
    main()
