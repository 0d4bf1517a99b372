#!/usr/bin/env python3
"""Writes the static curve-family and set fixtures under fixtures/."""
import json
import sys
from pathlib import Path

import sympy as sp

ROOT = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures"


def term(exp, num, den="1"):
    return {"exp": int(exp), "num": str(num), "den": str(den)}


def family(variables, parameters, anchor, branches, ramification=1):
    return {"variables": variables, "parameters": parameters, "anchor": anchor,
            "ramification": ramification, "branches": branches}


def branch(name, coords, excludes=(), **extra):
    b = {"name": name, "coordinates": coords, "domain_excludes": list(excludes)}
    b.update(extra)
    return b


def poly_str(expr, gens):
    """Polynomial text in the tool's grammar."""
    p = sp.Poly(sp.expand(expr), *gens)
    parts = []
    for monom, coeff in p.terms():
        factors = []
        for g, e in zip(gens, monom):
            if e == 1:
                factors.append(str(g))
            elif e > 1:
                factors.append(f"{g}^{e}")
        c = sp.Rational(coeff)
        body = "*".join(factors)
        if not body:
            parts.append(str(c))
        elif c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        else:
            parts.append(f"{c}*{body}")
    if not parts:
        return "0"
    out = parts[0]
    for p_ in parts[1:]:
        out += " - " + p_[1:] if p_.startswith("-") else " + " + p_
    return out


def laurent_terms(expr, s, lowest):
    """Terms (exponent, coefficient) of a Laurent series in s at s -> oo, exponents >= lowest."""
    u = sp.Symbol("u")
    e = sp.cancel(expr.subs(s, 1 / u))
    ser = sp.expand(sp.series(e, u, 0, -lowest + 1).removeO())
    acc = {}
    for t in sp.Add.make_args(ser):
        coeff, k = t.as_coeff_exponent(u)
        exp = -int(k)
        if exp >= lowest:
            acc[exp] = acc.get(exp, 0) + coeff
    return sorted(((k, sp.expand(v)) for k, v in acc.items() if sp.expand(v) != 0), key=lambda t: -t[0])


def write(name, obj):
    path = ROOT / name
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2) + "\n")


def main():
    # Three-branch family at the origin, parameters (y, z) with yz != 0.
    write("three_branches.json", family(["x", "y", "z"], ["y", "z"], "origin", [
        branch("gamma2", [[term(2, "y")], [term(1, "1")], [term(2, "z")]], ["y*z"]),
        branch("gamma3", [[term(1, "z^2")], [term(1, "y*z^2")], [term(2, "z^3")]], ["y*z"]),
        branch("gamma4", [[term(2, "y^2*z")], [term(2, "y*z^2")], [term(3, "y^2*z^2")]], ["y*z"]),
    ]))

    # Arcs (c t^-w, t^u) at infinity, c != 0.
    for u_, w_ in [(1, 1), (1, 2), (2, 3)]:
        write(f"power_strip_u{u_}_w{w_}.json", family(["x", "y"], ["c"], "infinity", [
            branch("arc", [[term(-w_, "c")], [term(u_, "1")]], ["c"]),
        ]))

    # Level-curve family of -1 <= xy + y^2 <= 1 with cleared denominators.
    write("plane_2d_infinity.json", family(["x", "y"], ["y"], "infinity", [
        branch("b1", [[term(1, "1")], [term(-1, "y")]]),
        branch("b2", [[term(1, "1")], [term(1, "-1"), term(-1, "y")]]),
    ]))
    # Its counterpart at the origin after inversion.
    write("plane_2d_origin.json", family(["x", "y"], ["y"], "origin", [
        branch("b1", [[term(1, "1")], [term(3, "y")]]),
        branch("b2", [[term(1, "1")], [term(1, "-1"), term(3, "y")]]),
    ]))
    # Exact inverted images of the origin branches, expanded at s -> oo.
    s, y = sp.symbols("s y")
    lowest = -30
    inverted = []
    t = 1 / s
    for name, arc in {"b1": (t, y * t ** 3), "b2": (t, -t + y * t ** 3)}.items():
        norm2 = sum(c ** 2 for c in arc)
        coords = []
        for c in arc:
            terms = laurent_terms(c / norm2, s, lowest)
            coords.append([term(k, poly_str(v, [y])) for k, v in terms])
        inverted.append(branch(name, coords, error_exponent=str(lowest - 1)))
    write("plane_2d_inverted_infinity.json", family(["x", "y"], ["y"], "infinity", inverted))

    # Rays in R^3 at the origin and their inverted images.
    write("rays_3d_origin.json", family(["x", "y", "z"], ["b", "c"], "origin", [
        branch("ray", [[term(1, "1")], [term(1, "b")], [term(1, "c")]]),
        branch("axis", [[term(2, "1")], [], []]),
    ]))
    write("rays_3d_infinity.json", family(["x", "y", "z"], ["b", "c"], "infinity", [
        branch("ray", [[term(1, "1", "b^2 + c^2 + 1")], [term(1, "b", "b^2 + c^2 + 1")],
                       [term(1, "c", "b^2 + c^2 + 1")]]),
        branch("axis", [[term(2, "1")], [], []]),
    ]))

    sets = {
        "three_branches.json": (["x", "y", "z"], [("(x^2 + y^2 + z^2)*x - z^2", ">=")]),
        "plane_2d.json": (["x", "y"], [("x*y + y^2 + 1", ">="), ("1 - x*y - y^2", ">=")]),
        "level_xy_minus_y.json": (["x", "y"], [("x*y - y", ">="), ("1 - x*y + y", ">=")]),
    }
    for u_, w_ in [(1, 1), (1, 2), (2, 3)]:
        mono = ("x" if u_ == 1 else f"x^{u_}") + "*" + ("y" if w_ == 1 else f"y^{w_}")
        sets[f"power_strip_u{u_}_w{w_}.json"] = (["x", "y"], [(f"1 - ({mono})^2", ">="), ("y - 1", ">=")])
    for name, (variables, cons) in sets.items():
        write("sets/" + name, {"variables": variables,
                               "constraints": [{"poly": p, "rel": r} for p, r in cons]})

    # Broughton sweep: S_t = {(x(xy - 1) - 1)^2 <= t}.
    write("sweep_broughton.json", {
        "variables": ["x", "y"],
        "f": ["-(x*(x*y - 1) - 1)^2"],
        "g": ["1"],
        "rel": ">=",
        "grid": [[-0.5], [-0.1], [0.1], [0.5], [0.9], [1.1], [1.5]],
        "at": "infinity",
        "probes": ["x", "y", "x*y"],
        "seed": 42,
    })


if __name__ == "__main__":
    main()
