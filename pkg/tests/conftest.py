from __future__ import annotations

import pytest

from ellagm import CurveRoots, PrecisionContext
from ellagm.numerics import format_real

# Reference data for four worked curves.  Decimal strings are truncated
# (not rounded) after 20 places, so comparisons truncate as well.
EX1_ROOTS = ("3-2i", "1+1i", "-4+1i")
EX1 = {
    "a": ("2.70331029534753078867", "-0.55487525889334275023"),
    "b": ("1.67414922803554004044", "-0.89597747612983812471"),
    "c": ("2.23606797749978969640", "0"),
    "w1": ("1.29215151748713051904", "0.44759218107818896608"),
    "w2": ("1.42661373451784507587", "-0.80963848056301882107"),
    "w3": ("-0.13446221703071455682", "1.25723066164120778715"),
    "point": ("2-1i", "8+4i"),
    "z": ("-0.72212997914002299126", "0.01717122412650902249"),
    "coords": ("-0.33249952362000772434", "-0.20502411273191295799"),
    "coords_fundamental": ("0.66750047637999227565", "0.79497588726808704200"),
}

EX2_ROOTS = ("1+3i", "-4-12i", "3+9i")
EX2 = {
    "a": ("1.47046851723128684330", "-2.04016608641756892919"),
    "b": ("-3.22578581905571472955", "-2.32501487101070997214"),
    "c": ("2.75099469475848456460", "-3.81680125374499001591"),
    "w": ("-0.29920293143872535713", "1.10940038117892953702"),
    "w_dash": ("1.14708588706988127437", "0.06697438037476960963"),
    "o1": ("0.42394147781557795862", "0.58818738077684957333"),
    "o2": ("-0.72314440925430331575", "0.52121300040207996369"),
    "point": ("3+2i", "28-14i"),
    "z": ("-0.42599662534207481578", "-0.02491254923738153924"),
    "coords_ortho": ("0.62858224538977667533", "0.37134662195976180031"),
}

EX3_REAL = {
    "a": "1.87612422291002530767",
    "b": "0.50982452853395859808",
    "c": "1.80552514518487755254",
    "w": ("2.90130425944817643666", "-1.70677932803214980295"),
}
EX3_COMPLEX = {
    "a": ("1.10851094368231305521", "-0.98431471713501219051"),
    "b": ("0.43669517024285334726", "-1.24929666083200513980"),
    "c": ("1.34004098848655674756", "-0.40712323180652750769"),
    "w1": ("1.28194824894788708942", "1.88277404359595361782"),
    "w2": ("2.36557653380849535471", "-0.03808700290170419307"),
    "w3": ("-1.08362828486060826529", "1.92086104649765781090"),
}

EX4_ROOTS = ("-1-3i", "3+1i", "-2+2i")
EX4 = {
    "a": ("1.74628455779589152702", "-1.43161089573822132705"),
    "b": ("0.91017972112445468260", "-2.19736822693561993207"),
    "c": ("2.24711142509587014360", "-0.22250788030178260411"),
    "w1": ("0.81646689790312614904", "1.10773333340066743861"),
    "w2": ("1.36061503191563570645", "-0.20595647167234558716"),
    "w3": ("-0.54414813401250955741", "1.31368980507301302578"),
}


def truncate(x, places: int = 20) -> str:
    """Decimal expansion of x cut (not rounded) after ``places`` digits."""
    s = format_real(x, places + 15)
    head, frac = s.split(".")
    out = f"{head}.{frac[:places]}"
    if out.lstrip("-").strip("0.") == "":
        return "0." + "0" * places
    return out


def _norm(s: str, places: int = 20) -> str:
    if "." not in s:
        s += "."
    head, frac = s.split(".")
    out = f"{head}.{(frac + '0' * places)[:places]}"
    return "0." + "0" * places if out.lstrip("-").strip("0.") == "" else out


def matches(value, expected, places: int = 20) -> bool:
    """True if the truncated decimals of value agree with the expected strings."""
    if isinstance(expected, str):
        return truncate(value.real if hasattr(value, "real") else value, places) == _norm(expected, places)
    re_s, im_s = expected
    return truncate(value.real, places) == _norm(re_s, places) and truncate(value.imag, places) == _norm(im_s, places)


def roots_of(ctx: PrecisionContext, literals) -> CurveRoots:
    from ellagm import parse_cnum

    return CurveRoots(*(parse_cnum(t, ctx) for t in literals))


def ex3_roots(ctx: PrecisionContext, complex_embedding: bool) -> CurveRoots:
    mp = ctx.mp
    t = mp.cbrt(2)
    if complex_embedding:
        t = t * mp.expjpi(mp.mpf(2) / 3)
    return CurveRoots(mp.mpc(t), mp.mpc(1), -1 - mp.mpc(t))


@pytest.fixture(scope="session")
def ctx100():
    return PrecisionContext(100)


@pytest.fixture(scope="session")
def ctx50():
    return PrecisionContext(50)


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(30)


# -- acceptance report ------------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
