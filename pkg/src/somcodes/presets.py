"""Named fields and worked-example presets with their embedded expectations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import UnknownPresetError
from .galois import FieldCtx, get_field, trace_kernel_subspace


def _gf(p, n, mod):
    return lambda: get_field(p, n, tuple(mod))


# moduli are low-to-high coefficient vectors
FIELD_PRESETS = {
    "GF2^14": _gf(2, 14, [1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    "GF2^12": _gf(2, 12, [1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1]),
    "GF2^16": _gf(2, 16, [1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    "GF3^4": _gf(3, 4, [2, 0, 0, 2, 1]),
    "GF3^5": _gf(3, 5, [1, 2, 0, 0, 0, 1]),
}


def parse_weights(text: str) -> tuple:
    """Parse an enumerator written as '1 + 129z^8080 + 2z^54 + ...' into sorted pairs."""
    out = {}
    for term in text.replace(" ", "").split("+"):
        if "z" not in term:
            out[0] = out.get(0, 0) + int(term)
            continue
        coef, _, exp = term.partition("z^")
        w = int(exp) if exp else 1
        out[w] = out.get(w, 0) + (int(coef) if coef else 1)
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class Preset:
    name: str
    field: str
    descriptor: str
    kind: str
    theorem: str
    theory_params: dict
    stated_params: tuple
    stated_enumerator: str
    beta_domain: Optional[tuple] = None  # ("V", w1, w2) restricts beta to a trace kernel
    expected_params: Optional[tuple] = None  # set when the stated parameters need correcting
    expected: dict = field(default_factory=dict)
    errata: Optional[str] = None
    notes: tuple = ()

    def ctx(self) -> FieldCtx:
        return FIELD_PRESETS[self.field]()

    @property
    def params(self) -> tuple:
        return self.expected_params or self.stated_params

    @property
    def weights(self) -> tuple:
        return parse_weights(self.stated_enumerator)

    def beta_basis(self, ctx: FieldCtx) -> Optional[list]:
        if self.beta_domain is None:
            return None
        from .pfunc import parse_element

        ws = [parse_element(ctx, w) for w in self.beta_domain[1:]]
        return trace_kernel_subspace(ctx, ws)

    @property
    def beta_domain_text(self) -> str:
        if self.beta_domain is None:
            return "full"
        return "V:" + ",".join(self.beta_domain[1:])


PRESETS = {
    p.name: p
    for p in [
        Preset(
            name="ex-3.1a",
            field="GF2^14",
            descriptor="tripleprod:l1=g^129,l2=g^258,l3=g^516",
            kind="punctured",
            theorem="T_lt1_case1",
            theory_params={"m": 7},
            stated_params=(16383, 15, 2064),
            stated_enumerator=(
                "1+z^2064+129z^8080+903z^8112+2709z^8144+4515z^8176+16383z^8192"
                "+4386z^8208+2709z^8240+903z^8272+129z^8304"
            ),
            expected={"self_orthogonal": True, "minimal": True, "ab_violated": True, "t_weight": 4},
        ),
        Preset(
            name="ex-3.1b",
            field="GF2^12",
            descriptor="tripleprod:l1=g^65,l2=g^1365,l3=g^0",
            kind="punctured",
            theorem="T_lt1_case2",
            theory_params={"m": 6},
            stated_params=(4095, 13, 520),
            stated_enumerator=(
                "1+z^520+65z^1992+260z^2008+585z^2024+1040z^2040+4095z^2048"
                "+1170z^2056+780z^2072+195z^2088"
            ),
            expected={"self_orthogonal": True, "minimal": True, "ab_violated": True, "t_weight": 3},
        ),
        Preset(
            name="ex-3.2",
            field="GF2^16",
            descriptor="singlyeven:l1=g^257,l2=g^514,w1=g^3084,w2=g^42148",
            kind="punctured",
            beta_domain=("V", "g^3084", "g^42148"),
            theorem="T_ltt1",
            theory_params={"m": 8},
            stated_params=(65535, 15, 16450),
            stated_enumerator="1+z^16450+2080z^32578+6240z^32706+16383z^32768+5983z^32834+2080z^32962",
            expected={"self_orthogonal": True, "minimal": True, "ab_violated": True, "parity": "singly-even"},
        ),
        Preset(
            name="ex-4.1a",
            field="GF3^4",
            descriptor="ftee:t=1",
            kind="full",
            theorem="T_ccwwl_1mod4",
            theory_params={"p": 3, "n": 4},
            stated_params=(243, 6, 54),
            expected_params=(81, 5, 54),
            stated_enumerator="1+240z^54+2z^81",
            expected={"self_orthogonal": True, "griesmer_met": True},
            errata=(
                "the example text states parameters [243, 6, 54]; a code over GF(3^4) of this form has "
                "length 3^4 = 81 and 243 codewords, so the corrected parameters are [81, 5, 54]"
            ),
        ),
        Preset(
            name="ex-4.1b",
            field="GF3^5",
            descriptor="ftee:t=1",
            kind="full",
            theorem="T_ccwwl_3mod4",
            theory_params={"p": 3, "n": 5},
            stated_params=(243, 6, 153),
            stated_enumerator="1+242z^153+242z^162+242z^171+2z^243",
            expected={"self_orthogonal": True},
        ),
        Preset(
            name="ex-4.2a",
            field="GF3^5",
            descriptor="fa:a=1;quad:1@0,g^23@1,g^4@2",
            kind="punctured",
            theorem="T_ccww_even",
            theory_params={"p": 3, "n": 5, "s": 1, "a": 1},
            stated_params=(242, 6, 72),
            stated_enumerator="1+2z^72+112z^153+566z^162+48z^180",
            expected={
                "self_orthogonal": True,
                "minimal": True,
                "ab_violated": True,
                "s": 1,
                "support_size": 81,
            },
            notes=(
                "the stated Walsh values {0, 27, 27z, 27z^2} correspond to epsilon = -1 under "
                "W = epsilon * sqrt(p*)^(n+s) * zeta^(f*), since sqrt(-3)^6 = -27; the text says epsilon = 1",
            ),
        ),
        Preset(
            name="ex-4.2b",
            field="GF3^5",
            descriptor="fa:a=1;quad:g@0,1@1,2@2",
            kind="punctured",
            theorem="T_ccww_odd",
            theory_params={"p": 3, "n": 5, "s": 2, "a": 1},
            stated_params=(242, 6, 54),
            stated_enumerator="1+2z^54+16z^135+698z^162+12z^189",
            expected={
                "self_orthogonal": True,
                "minimal": True,
                "ab_violated": True,
                "s": 2,
                "support_size": 27,
            },
        ),
    ]
}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        raise UnknownPresetError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


def _check(name, expected, computed) -> dict:
    return {"check": name, "expected": expected, "computed": computed, "ok": expected == computed}


def evaluate_preset(preset: Preset, threads: int = 1, minimality: str = "auto") -> dict:
    """Run the full pipeline for a preset and compare it with the embedded expectations."""
    from .codes import CodeSpec, analyze
    from .pfunc import compute_t_vector, parse_descriptor
    from .theory import diff, predict
    from .walsh import classify, walsh_transform

    ctx = preset.ctx()
    f = parse_descriptor(ctx, preset.descriptor)
    spec = CodeSpec(f, preset.kind, preset.beta_basis(ctx))
    spectrum = walsh_transform(f)
    report = analyze(spec, spectrum, minimality=minimality, threads=threads)
    exp = preset.expected

    checks = [
        _check("params", list(preset.params), report.params),
        _check("weights", [list(r) for r in preset.weights], [list(r) for r in report.distribution.weights]),
    ]
    tparams = dict(preset.theory_params)
    profile = None
    if f.family == "fa":
        profile = classify(walsh_transform(f.params["base"]))
        tparams["eps"] = profile.epsilon
    pred = predict(preset.theorem, **tparams)
    tdiff = diff(pred, report.distribution)
    checks.append(_check("theory", True, tdiff["match"]))
    if "self_orthogonal" in exp:
        checks.append(_check("self_orthogonal.direct", exp["self_orthogonal"], report.so_direct))
        checks.append(_check("self_orthogonal.criterion", exp["self_orthogonal"], report.so_criterion))
    if "minimal" in exp:
        checks.append(_check("minimal", exp["minimal"], report.minimal))
    if "ab_violated" in exp:
        checks.append(_check("ab_violated", exp["ab_violated"], report.ab == "violates"))
    if "griesmer_met" in exp:
        checks.append(_check("griesmer_met", exp["griesmer_met"], report.griesmer["met"]))
    if "parity" in exp:
        checks.append(_check("parity", exp["parity"], report.parity))
    if "t_weight" in exp:
        l1, l2, l3 = (f.params[k] for k in ("l1", "l2", "l3"))
        checks.append(_check("t_weight", exp["t_weight"], sum(compute_t_vector(ctx, l1, l2, l3))))
    if profile is not None:
        checks.append(_check("s", exp.get("s"), profile.s))
        checks.append(_check("support_size", exp.get("support_size"), int(profile.support.size)))

    out = {
        "preset": preset.name,
        "descriptor": preset.descriptor,
        "kind": preset.kind,
        "beta_domain": preset.beta_domain_text,
        "report": report.to_json(),
        "theory": {"provenance": pred.theorem.value, "params": pred.params, **tdiff},
        "checks": checks,
        "match": all(c["ok"] for c in checks),
    }
    if profile is not None:
        out["base_profile"] = profile.summary()
    if preset.errata:
        out["errata"] = {"stated_params": list(preset.stated_params), "note": preset.errata}
    if preset.notes:
        out["notes"] = list(preset.notes)
    return out


def default_field(p: int, n: int) -> FieldCtx:
    """A named field when one matches (p, n), otherwise the smallest irreducible modulus."""
    from .galois import is_irreducible

    for make in FIELD_PRESETS.values():
        ctx = make()
        if (ctx.p, ctx.n) == (p, n):
            return ctx
    for v in range(p**n):
        coeffs = [(v // p**i) % p for i in range(n)] + [1]
        if coeffs[0] and is_irreducible(coeffs, p):
            return get_field(p, n, tuple(coeffs))
    raise ValueError(f"no irreducible polynomial of degree {n} over GF({p})")
