"""Regenerate the bundled structure files under src/shlie/fixtures."""

from __future__ import annotations

from pathlib import Path

from shlie.gauge import nonabelian2, so3
from shlie.ikeda import NonlinearLieAlgebra, field_sector_gauge_data
from shlie.structure_io import as_structure, dumps, loads, sigma_structure

OUT = Path(__file__).resolve().parents[1] / "src" / "shlie" / "fixtures"

T = ("T1", "T2", "T3")


def algebras():
    lin = NonlinearLieAlgebra.from_table(T, {("T1", "T2"): "T3", ("T2", "T3"): "T1", ("T3", "T1"): "T2"},
                                         "ikeda_so3_linear")
    quad = NonlinearLieAlgebra.from_table(
        T, {("T1", "T2"): "T3 + T3^2", ("T2", "T3"): "T1 + T1^2", ("T3", "T1"): "T2 + T2^2"}, "ikeda_quadratic")
    d2 = NonlinearLieAlgebra.from_table(("T1", "T2"), {("T1", "T2"): "T1*T2"}, "ikeda_d2")
    return lin, quad, d2


def structures():
    lin, quad, d2 = algebras()
    return [
        as_structure(so3(), "strict_lie", "so(3) acting on itself by the adjoint action"),
        as_structure(nonabelian2(), "strict_lie", "the two-dimensional algebra [a, b] = b acting on itself"),
        sigma_structure(lin, "Poisson sigma model on the Kirillov-Kostant bracket of so(3)"),
        sigma_structure(quad, "Poisson sigma model with W_AB = eps_ABC (T_C + T_C^2); open off shell"),
        sigma_structure(d2, "Poisson sigma model with W_12 = T1 T2"),
        as_structure(field_sector_gauge_data(quad, "quadratic_fields"), "gauge",
                     "scalar-field sector of ikeda_quadratic as general gauge data; l_3 is nonzero"),
    ]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for st in structures():
        text = dumps(st)
        if dumps(loads(text)) != text:
            raise SystemExit(f"{st.name}: serializer is not canonical")
        (OUT / f"{st.name}.toml").write_text(text, encoding="utf-8")
        print("wrote", st.name)


if __name__ == "__main__":
    main()
