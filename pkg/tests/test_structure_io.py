import pytest

from shlie.gauge import nonabelian2, so3
from shlie.ikeda import check_w_axioms
from shlie.structure_io import StructureError, dumps, fixture_dir, load, loads

FIXTURES = sorted(fixture_dir().glob("*.toml"))


def test_fixtures_shipped():
    names = {p.stem for p in FIXTURES}
    assert {"so3_strict", "nonabelian2", "ikeda_so3_linear", "ikeda_quadratic", "ikeda_d2",
            "quadratic_fields"} <= names


@pytest.mark.parametrize("path", FIXTURES, ids=lambda p: p.stem)
def test_round_trip_byte_identical(path):
    text = path.read_text(encoding="utf-8")
    assert dumps(loads(text)) == text


def test_so3_fixture_equals_builder():
    st = load(fixture_dir() / "so3_strict.toml")
    assert st.kind == "strict_lie"
    assert st.gauge == so3()
    assert load(fixture_dir() / "nonabelian2.toml").gauge == nonabelian2()


def test_nonlinear_fixture_loads_algebra():
    st = load(fixture_dir() / "ikeda_quadratic.toml")
    assert st.is_sigma and st.alg.dim == 3
    assert str(st.alg.w(0, 1)) == "T3^2 + T3"
    assert check_w_axioms(st.alg)["passed"]


def test_antisymmetry_violation_names_pair():
    text = '''
kind = "gauge"
parameters = ["x", "y"]
fields = ["f"]
correction = [
    { left = "x", right = "y", word = "f", value = "x" },
    { left = "y", right = "x", word = "f", value = "x" },
]
'''
    with pytest.raises(StructureError, match=r"not antisymmetric on \(x, y\) at word f"):
        loads(text)


def test_strict_bracket_antisymmetry_violation():
    text = '''
kind = "strict_lie"
parameters = ["x", "y"]
fields = []
brackets = [
    { left = "x", right = "y", value = "x" },
    { left = "y", right = "x", value = "x" },
]
'''
    with pytest.raises(StructureError, match=r"\(y, x\)"):
        loads(text)


def test_empty_field_basis_with_action():
    text = '''
kind = "gauge"
parameters = ["x"]
fields = []
delta = [{ param = "x", word = "1", value = "f" }]
'''
    with pytest.raises(StructureError, match="empty field basis"):
        loads(text)


def test_parse_error_has_line_and_column():
    with pytest.raises(StructureError, match=r"line 3, column \d+"):
        loads('kind = "gauge"\nparameters = ["x"]\nfields = [f\n', source="broken.toml")


@pytest.mark.parametrize("text, pattern", [
    ('kind = "lie"', "unknown kind"),
    ('kind = "gauge"\nparameters = ["x"]\nfields = ["f"]\ndelta = [{ param = "z", word = "f", value = "f" }]',
     "'z' is not a generator"),
    ('kind = "nonlinear_lie"\ngenerators = ["T1"]\nW = [{ left = "T1", right = "T2", value = "T1" }]',
     "undeclared generator"),
    ('kind = "nonlinear_lie"\ngenerators = ["T1", "T2"]\nW = [{ left = "T1", right = "T2" }]',
     "missing key 'value'"),
])
def test_invalid_entries(text, pattern):
    with pytest.raises(StructureError, match=pattern):
        loads(text)


def test_missing_file(tmp_path):
    with pytest.raises(StructureError, match="No such file"):
        load(tmp_path / "nothing.toml")


def test_fixture_dir_override(monkeypatch, tmp_path):
    monkeypatch.setenv("SHLIE_FIXTURES", str(tmp_path))
    assert fixture_dir() == tmp_path
