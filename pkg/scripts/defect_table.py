"""Defect of the catalog matrices, floating point next to the exact cyclotomic oracle."""
import math

from hadamard import catalog, defect
from hadamard.cyclotomic import exact_defect

ROWS = [
    ("F2", catalog.fourier(2), 2),
    ("F3", catalog.fourier(3), 3),
    ("F4", catalog.fourier(4), 4),
    ("F5", catalog.fourier(5), 5),
    ("F6", catalog.fourier(6), 6),
    ("F2 x F3", catalog.tensor(catalog.fourier(2), catalog.fourier(3)), 6),
    ("H1", catalog.butson_h(1), 4),
    ("H2", catalog.butson_h(2), 4),
    ("H3", catalog.butson_h(3), 4),
    ("H4", catalog.butson_h(4), 4),
    ("C6", catalog.c6_cyclic(), None),
    ("H(theta0)", catalog.h_theta(catalog.c6_theta()), None),
    ("H(pi/2)", catalog.h_theta(math.pi / 2), 4),
    ("H(2.0)", catalog.h_theta(2.0), None),
    ("H(-2.7)", catalog.h_theta(-2.7), None),
]


def main():
    print(f"{'matrix':10} {'nullity':>7} {'defect':>6} {'exact':>5} {'span condition':>15}")
    for name, H, m in ROWS:
        rep = defect.defect(H)
        exact = "-" if m is None else str(exact_defect(H, m))
        print(f"{name:10} {rep.nullity:7d} {rep.defect:6d} {exact:>5} {str(rep.satisfies_span_condition):>15}")


if __name__ == "__main__":
    main()
