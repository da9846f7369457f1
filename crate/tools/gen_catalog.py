#!/usr/bin/env python3
"""Regenerate the catalog descriptor files and golden tables.

Each entry lands in crates/amalgamlab/data/catalog/<slug>.json. Orders are
computed from closed formulas here and re-checked by the Rust loader against
the constructed groups.

    python3 tools/gen_catalog.py
"""
import json
import math
import re
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "crates" / "amalgamlab" / "data"


def fact(n):
    return math.factorial(n)


def psl_order(n, q):
    o = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        o *= q ** i - 1
    return o // math.gcd(n, q - 1)


def entry(id, family, degree, socle, group, outer, stab, stab_iso, two, order, stab_order,
          stab_soluble, construction, table, row, notes=""):
    assert order % degree == 0 and order // degree == stab_order, id
    assert stab_order % (degree - 1) == 0, id
    return {
        "id": id,
        "family": family,
        "degree": degree,
        "socle": socle,
        "group": group,
        "outer": outer,
        "stabiliser": stab,
        "stabiliser_iso": stab_iso,
        "two_point": two,
        "order": order,
        "stabiliser_order": stab_order,
        "two_point_order": stab_order // (degree - 1),
        "stabiliser_soluble": stab_soluble,
        "construction": construction,
        "source": {"table": table, "row": row},
        "notes": notes,
    }


def almost_simple():
    out = []
    AS = "almost-simple"
    for n in range(5, 10):
        a, s = fact(n) // 2, fact(n)
        two_a = "C3" if n == 5 else f"A{n - 2}"
        out.append(entry(f"A{n}@{n}", AS, n, f"A{n}", f"A{n}", "1", f"A{n-1}", f"A{n-1}", two_a,
                         a, a // n, n <= 5, {"kind": "alternating", "n": n}, AS, 1))
        out.append(entry(f"S{n}@{n}", AS, n, f"A{n}", f"S{n}", "2", f"S{n-1}", f"S{n-1}", f"S{n-2}",
                         s, s // n, n <= 5, {"kind": "symmetric", "n": n}, AS, 1))

    def line(id, q, variant, group, outer, stab, stab_iso, two, order):
        return entry(id, AS, q + 1, f"PSL(2,{q})", group, outer, stab, stab_iso, two, order,
                     order // (q + 1), True, {"kind": "projective-line", "q": q, "variant": variant}, AS, 2)

    out += [
        line("PSL2_5@6", 5, "psl", "PSL(2,5)", "1", "5:2", "D10", "C2", 60),
        line("PGL2_5@6", 5, "pgl", "PGL(2,5)", "2", "5:4", "5:4", "C4", 120),
        line("PSL2_7@8", 7, "psl", "PSL(2,7)", "1", "7:3", "7:3", "C3", 168),
        line("PGL2_7@8", 7, "pgl", "PGL(2,7)", "2", "7:6", "7:6", "C6", 336),
        line("PSL2_8@9", 8, "psl", "PSL(2,8)", "1", "2^3:7", "2^3:7", "C7", 504),
        line("PGammaL2_8@9", 8, "pgammal", "PGammaL(2,8)", "3", "2^3:7:3", "2^3:7:3", "7:3", 1512),
        line("PSL2_9@10", 9, "psl", "PSL(2,9)", "1", "3^2:4", "3^2:4", "C4", 360),
        line("PSigmaL2_9@10", 9, "psigmal", "PSigmaL(2,9)", "2", "3^2:D8", "3^2:D8", "D8", 720),
        line("PGL2_9@10", 9, "pgl", "PGL(2,9)", "2", "3^2:8", "3^2:8", "C8", 720),
        line("M10@10", 9, "m10", "M10", "2", "3^2:Q8", "3^2:Q8", "Q8", 720),
        line("PGammaL2_9@10", 9, "pgammal", "PGammaL(2,9)", "2^2", "3^2:SD16", "3^2:SD16", "SD16", 1440),
        line("PSL2_11@12", 11, "psl", "PSL(2,11)", "1", "11:5", "11:5", "C5", 660),
        line("PGL2_11@12", 11, "pgl", "PGL(2,11)", "2", "11:10", "11:10", "C10", 1320),
        line("PSL2_13@14", 13, "psl", "PSL(2,13)", "1", "13:6", "13:6", "C6", 1092),
        line("PGL2_13@14", 13, "pgl", "PGL(2,13)", "2", "13:12", "13:12", "C12", 2184),
    ]

    def space(id, n, q, stab, stab_iso, two, soluble):
        k = (q ** n - 1) // (q - 1)
        o = psl_order(n, q)
        return entry(id, AS, k, f"PSL({n},{q})", f"PSL({n},{q})", "1", stab, stab_iso, two, o, o // k,
                     soluble, {"kind": "projective-space", "n": n, "q": q}, AS, 2)

    out += [
        space("PSL3_2@7", 3, 2, "2^2:SL(2,2)", "S4", "C2^2", True),
        space("PSL3_3@13", 3, 3, "3^2:GL(2,3)", "3^2:GL(2,3)", "[36]", True),
        space("PSL3_4@21", 3, 4, "2^4:SL(2,4)", "2^4:A5", "[48]", False),
        space("PSL4_2@15", 4, 2, "2^3:GL(3,2)", "2^3:PSL(2,7)", "[96]", False),
    ]

    sp = 1451520
    out += [
        entry("Sp6_2@28", AS, 28, "Sp(6,2)", "Sp(6,2)", "1", "O6-(2).2", "PSU(4,2):2", "2^4:S5", sp,
              sp // 28, False, {"kind": "quadratic-forms", "sign": "minus"}, AS, 6),
        entry("Sp6_2@36", AS, 36, "Sp(6,2)", "Sp(6,2)", "1", "O6+(2).2", "S8", "(S4xS4):2", sp,
              sp // 36, False, {"kind": "quadratic-forms", "sign": "plus"}, AS, 7),
        entry("PSL2_11@11", AS, 11, "PSL(2,11)", "PSL(2,11)", "1", "A5", "A5", "S3", 660, 60, False,
              {"kind": "exceptional", "name": "psl2-11-degree-11"}, AS, 8),
        entry("A7@15", AS, 15, "A7", "A7", "1", "PSL(2,7)", "PSL(2,7)", "A4", 2520, 168, False,
              {"kind": "exceptional", "name": "a7-degree-15"}, AS, 12),
        entry("PGammaL2_8@28", AS, 28, "PSL(2,8)", "PGammaL(2,8)", "3", "9:6", "9:6", "C2", 1512, 54, True,
              {"kind": "exceptional", "name": "pgammal2-8-degree-28"}, AS, 16,
              "the socle PSL(2,8) alone has orbits of length 9 on the remaining 27 points"),
    ]

    D = {"kind": "descriptor-only"}

    def desc(id, k, socle, group, outer, stab, two, order, soluble, row, notes=""):
        return entry(id, AS, k, socle, group, outer, stab, stab, two, order, order // k, soluble, D, AS, row, notes)

    def sz(q):
        return q * q * (q * q + 1) * (q - 1)

    def ree(q):
        return q ** 3 * (q ** 3 + 1) * (q - 1)

    def psu3(q):
        return q ** 3 * (q ** 3 + 1) * (q * q - 1) // math.gcd(3, q + 1)

    sp8 = 2 ** 16 * (2 ** 2 - 1) * (2 ** 4 - 1) * (2 ** 6 - 1) * (2 ** 8 - 1)
    out += [
        desc("Sz8@65", 65, "Sz(8)", "Sz(8)", "1", "2^(3+3):7", "C7", sz(8), True, 3),
        desc("Sz32@1025", 1025, "Sz(32)", "Sz(32)", "1", "2^(5+5):31", "C31", sz(32), True, 3),
        desc("Ree27@19684", 19684, "Ree(27)", "Ree(27)", "1", "3^(3+3+3):26", "C26", ree(27), True, 4),
        desc("PSU3_3@28", 28, "PSU(3,3)", "PSU(3,3)", "1", "3^(1+2):8", "C8", psu3(3), True, 5),
        desc("PSU3_4@65", 65, "PSU(3,4)", "PSU(3,4)", "1", "2^(2+4):15", "C15", psu3(4), True, 5),
        desc("PSU3_5@126", 126, "PSU(3,5)", "PSU(3,5)", "1", "5^(1+2):8", "C8", psu3(5), True, 5),
        desc("Sp8_2@120", 120, "Sp(8,2)", "Sp(8,2)", "1", "O8-(2):2", "2^6:O6-(2):2", sp8, False, 6),
        desc("Sp8_2@136", 136, "Sp(8,2)", "Sp(8,2)", "1", "O8+(2):2", "2^6:O6+(2):2", sp8, False, 7),
        desc("M11@11", 11, "M11", "M11", "1", "M10", "3^2:Q8", 7920, False, 9),
        desc("M11@12", 12, "M11", "M11", "1", "PSL(2,11)", "A5", 7920, False, 10),
        desc("M12@12", 12, "M12", "M12", "1", "M11", "M10", 95040, False, 11),
        desc("M22@22", 22, "M22", "M22", "1", "PSL(3,4)", "2^4:A5", 443520, False, 13),
        desc("M22.2@22", 22, "M22", "M22:2", "2", "PSL(3,4):2", "2^4:S5", 887040, False, 13),
        desc("M23@23", 23, "M23", "M23", "1", "M22", "PSL(3,4)", 10200960, False, 14),
        desc("M24@24", 24, "M24", "M24", "1", "M23", "M22", 244823040, False, 15),
        desc("HS@176", 176, "HS", "HS", "1", "PSU(3,5):2", "A6.2^2", 44352000, False, 17),
        desc("Co3@276", 276, "Co3", "Co3", "1", "McL:2", "PSU(4,3):2", 495766656000, False, 18),
    ]
    return out


def affine():
    out = []
    AF = "affine"

    def af(id, p, d, stab, stab_iso, two, lin_order, soluble, construction, row, notes=""):
        k = p ** d
        socle = f"{p}^{d}" if d > 1 else f"C{p}"
        return entry(id, AF, k, socle, f"{socle}:{stab}", "-", stab, stab_iso, two, k * lin_order,
                     lin_order, soluble, construction, AF, row, notes)

    def semilinear(q, gens):
        return {"kind": "semilinear", "q": q, "generators": gens}

    for q, p, e in [(4, 2, 2), (5, 5, 1), (7, 7, 1), (8, 2, 3), (9, 3, 2), (11, 11, 1), (13, 13, 1),
                    (16, 2, 4), (25, 5, 2), (27, 3, 3), (32, 2, 5)]:
        out.append(af(f"AGL1_{q}@{q}", p, e, f"GL(1,{q})", f"C{q-1}", "1", q - 1, True,
                      semilinear(q, [[1, 0]]), 0))
        if e > 1:
            lab = {4: "S3", 8: "7:3", 9: "SD16", 16: "15:4", 25: "24:2", 27: "26:3", 32: "31:5"}[q]
            out.append(af(f"AGammaL1_{q}@{q}", p, e, f"GammaL(1,{q})", lab, f"C{e}", (q - 1) * e, True,
                          semilinear(q, [[1, 0], [0, 1]]), 0))
    out.append(af("3^2:Q8@9", 3, 2, "Q8", "Q8", "1", 8, True, semilinear(9, [[2, 0], [1, 1]]), 0))
    out.append(af("2^4:(15:2)@16", 2, 4, "15:2", "15:2", "C2", 30, True, semilinear(16, [[1, 0], [0, 2]]), 0))

    def lin(p, d, kind):
        return {"kind": "affine-linear", "p": p, "dim": d, "linear": kind}

    def mats(f):
        return {"kind": "affine-matrices", "file": f}

    out += [
        af("ASL2_3@9", 3, 2, "SL(2,3)", "SL(2,3)", "C3", 24, True, lin(3, 2, "sl"), 1),
        af("AGL2_3@9", 3, 2, "GL(2,3)", "GL(2,3)", "S3", 48, True, lin(3, 2, "gl"), 1),
        af("AGL3_2@8", 2, 3, "GL(3,2)", "PSL(2,7)", "S4", 168, False, lin(2, 3, "sl"), 1),
        af("ASL3_3@27", 3, 3, "SL(3,3)", "SL(3,3)", "3^2:SL(2,3)", 5616, False, lin(3, 3, "sl"), 1),
        af("2^4:A5@16", 2, 4, "SL(2,4)", "A5", "C2^2", 60, False, mats("sl2_4_p2.json"), 1),
        af("2^4:S5@16", 2, 4, "SigmaL(2,4)", "S5", "D8", 120, False, mats("sigmal2_4_p2.json"), 1,
           "2^4.S5 read as the split extension"),
        af("2^4:GL2_4@16", 2, 4, "GL(2,4)", "3xA5", "A4", 180, False, mats("gl2_4_p2.json"), 1),
        af("2^4:GammaL2_4@16", 2, 4, "GammaL(2,4)", "(3xA5):2", "S4", 360, False, mats("gammal2_4_p2.json"), 1),
        af("2^4:A8@16", 2, 4, "SL(4,2)", "A8", "2^3:PSL(2,7)", 20160, False, lin(2, 4, "sl"), 1),
        af("ASL2_5@25", 5, 2, "SL(2,5)", "SL(2,5)", "C5", 120, False, lin(5, 2, "sl"), 1),
        af("AGL2_5@25", 5, 2, "GL(2,5)", "GL(2,5)", "5:4", 480, False, lin(5, 2, "gl"), 1),
        af("ASL2_7@49", 7, 2, "SL(2,7)", "SL(2,7)", "C7", 336, False, lin(7, 2, "sl"), 1),
        af("ASL2_11@121", 11, 2, "SL(2,11)", "SL(2,11)", "C11", 1320, False, lin(11, 2, "sl"), 1),
        af("ASL2_13@169", 13, 2, "SL(2,13)", "SL(2,13)", "C13", 2184, False, lin(13, 2, "sl"), 1),
        af("2^4:S6@16", 2, 4, "Sp(4,2)", "S6", "2xS4", 720, False, mats("sp4_2_p2.json"), 2),
    ]
    D = {"kind": "descriptor-only"}
    out += [
        af("3^4:Sp4_3@81", 3, 4, "Sp(4,3)", "Sp(4,3)", "[648]", 51840, False, D, 2),
        af("2^6:Sp6_2@64", 2, 6, "Sp(6,2)", "Sp(6,2)", "[23040]", 1451520, False, D, 2),
        af("2^6:G2_2@64", 2, 6, "G2(2)", "G2(2)", "[192]", 12096, False, D, 3),
        af("5^2:Q8:3@25", 5, 2, "Q8:3", "SL(2,3)", "1", 24, True, mats("q8_3_p5.json"), 4),
        af("5^2:Q8.6@25", 5, 2, "Q8.6", "SL(2,3)oC4", "C2", 48, True, mats("q8_6_p5.json"), 4),
        af("5^2:(Q8:3).4@25", 5, 2, "(Q8:3).4", "(Q8:3).4", "C4", 96, True, mats("q8_3_4_p5.json"), 4),
        af("7^2:Q8:S3@49", 7, 2, "Q8:S3", "2.S4-", "1", 48, True, mats("q8_s3_p7.json"), 5,
           "the order-48 transitive subgroup is the binary octahedral group, not GL(2,3)"),
        af("7^2:3x(Q8.2)@49", 7, 2, "3x(Q8.2)", "3xQ16", "1", 48, True, mats("c3_q16_p7.json"), 5),
        af("7^2:3x(Q8:S3)@49", 7, 2, "3x(Q8:S3)", "3x2.S4-", "C3", 144, True, mats("c3_q8_s3_p7.json"), 5),
        af("11^2:5x(Q8:3)@121", 11, 2, "5x(Q8:3)", "5xSL(2,3)", "1", 120, True, mats("c5_q8_3_p11.json"), 6),
        af("11^2:5x(Q8:S3)@121", 11, 2, "5x(Q8:S3)", "5xGL(2,3)", "C2", 240, True, mats("c5_q8_s3_p11.json"), 6),
        af("23^2:11x(Q8:S3)@529", 23, 2, "11x(Q8:S3)", "11x2.S4-", "1", 528, True, mats("c11_q8_s3_p23.json"), 7,
           "-2 is a non-square mod 23, so Q8:S3 here is the binary octahedral group"),
    ]
    for i, (stab, two, order, sol) in enumerate([
        ("2^(1+4):5", "C2", 160, True),
        ("2^(1+4):D10", "[4]", 320, True),
        ("2^(1+4):(5:4)", "[8]", 640, True),
        ("2^(1+4):A5", "2.A4", 1920, False),
        ("2^(1+4):S5", "2.S4", 3840, False),
    ]):
        out.append(af(f"3^4:{stab}@81", 3, 4, stab, stab, two, order, sol, D, 8,
                      "stabiliser and two-point options aligned positionally" if i else ""))
    out += [
        af("3^6:SL2_13@729", 3, 6, "SL(2,13)", "SL(2,13)", "C3", 2184, False, mats("sl2_13_p3.json"), 9),
        af("2^4:A6@16", 2, 4, "A6", "A6", "S4", 360, False, mats("a6_p2.json"), 10),
        af("2^4:A7@16", 2, 4, "A7", "A7", "PSL(2,7)", 2520, False, mats("a7_p2.json"), 11),
        af("2^6:PSU3_3@64", 2, 6, "PSU(3,3)", "PSU(3,3)", "4.S4", 6048, False, D, 12,
           "two-point stabiliser also listed as 4^2.S3, of the same order 96"),
        af("11^2:SL2_5@121", 11, 2, "SL(2,5)", "SL(2,5)", "1", 120, False, mats("sl2_5_p11.json"), 13),
        af("11^2:5xSL2_5@121", 11, 2, "5xSL(2,5)", "5xSL(2,5)", "C5", 600, False, mats("c5_sl2_5_p11.json"), 13),
        af("19^2:9xSL2_5@361", 19, 2, "9xSL(2,5)", "9xSL(2,5)", "C3", 1080, False, D, 14),
        af("29^2:7xSL2_5@841", 29, 2, "7xSL(2,5)", "7xSL(2,5)", "1", 840, False, D, 15),
        af("29^2:7x(4oSL2_5)@841", 29, 2, "7x(4oSL(2,5))", "7x(4oSL(2,5))", "C2", 1680, False, D, 15),
        af("59^2:29xSL2_5@3481", 59, 2, "29xSL(2,5)", "29xSL(2,5)", "1", 3480, False, D, 16),
    ]
    return out


def slug(id):
    return re.sub(r"[^A-Za-z0-9@._-]+", "_", id).strip("_")


def side(label, order, degree):
    return {"label": label, "order": order, "degree": degree}


def table1():
    rows = [
        (1, ("3^2:SL(2,3)", 216, 9), ("5^2:SL(2,3)", 600, 25), ("SL(2,3)", 24), ("C3", 3), ("1", 1)),
        (2, ("3^2:GL(2,3)", 432, 9), ("5^2:GL(2,3)", 1200, 25), ("GL(2,3)", 48), ("S3", 6), ("C2", 2)),
        (3, ("3^2:GL(2,3)", 432, 9), ("7^2:GL(2,3)", 2352, 49), ("GL(2,3)", 48), ("S3", 6), ("1", 1)),
        (4, ("5^2:GL(2,3)", 1200, 25), ("7^2:GL(2,3)", 2352, 49), ("GL(2,3)", 48), ("C2", 2), ("1", 1)),
        (5, ("A6", 360, 6), ("PSL(2,11)", 660, 11), ("A5", 60), ("A4", 12), ("D6", 6)),
        (6, ("PSL(2,11)", 660, 11), ("2^4:A5", 960, 16), ("A5", 60), ("D6", 6), ("C2^2", 4)),
        (7, ("A6", 360, 6), ("2^4:A5", 960, 16), ("A5", 60), ("A4", 12), ("C2^2", 4)),
        (8, ("S6", 720, 6), ("2^4:S5", 1920, 16), ("S5", 120), ("S4", 24), ("D8", 8)),
        (9, ("A7", 2520, 7), ("2^4:A6", 5760, 16), ("A6", 360), ("A5", 60), ("S4", 24)),
        (10, ("S7", 5040, 7), ("2^4:S6", 11520, 16), ("S6", 720), ("S5", 120), ("2xS4", 48)),
        (11, ("A8", 20160, 8), ("2^4:A7", 40320, 16), ("A7", 2520), ("A6", 360), ("PSL(2,7)", 168)),
        (12, ("A9", 181440, 9), ("2^4:A8", 322560, 16), ("A8", 20160), ("A7", 2520), ("2^3:PSL(2,7)", 1344)),
        (13, ("S9", 362880, 9), ("Sp(6,2)", 1451520, 36), ("S8", 40320), ("S7", 5040), ("(S4xS4):2", 1152)),
        (14, ("A7", 2520, 15), ("2^3:PSL(2,7)", 1344, 8), ("PSL(2,7)", 168), ("A4", 12), ("S4", 24)),
        (15, ("5^2:SL(2,5)", 3000, 25), ("11^2:SL(2,5)", 14520, 121), ("SL(2,5)", 120), ("C5", 5), ("1", 1)),
        (16, ("13^2:SL(2,13)", 369096, 169), ("3^6:SL(2,13)", 1592136, 729), ("SL(2,13)", 2184), ("C13", 13), ("C3", 3)),
    ]
    return {
        "rows": [
            {
                "row": r,
                "left": side(*l),
                "right": side(*w),
                "shared": {"label": s[0], "order": s[1]},
                "columns": [{"label": a[0], "order": a[1]}, {"label": b[0], "order": b[1]}],
            }
            for r, l, w, s, a, b in rows
        ]
    }


def three_arc():
    t = [
        ("A7", 2520, 7, "A7", 2520, 7, "A6", 360, True, None),
        ("S7", 5040, 7, "S7", 5040, 7, "S6", 720, True, None),
        ("A7", 2520, 7, "2^4:A6", 5760, 16, "A6", 360, False, ("C2^2", 4)),
        ("S7", 5040, 7, "2^4:S6", 11520, 16, "S6", 720, False, ("D8", 8)),
        ("A8", 20160, 8, "2^4:A7", 40320, 16, "A7", 2520, False, ("S4", 24)),
        ("A9", 181440, 9, "2^4:A8", 322560, 16, "A8", 20160, False, ("PSL(2,7)", 168)),
        ("S9", 362880, 9, "Sp(6,2)", 1451520, 36, "S8", 40320, False, ("S4xS3", 144)),
    ]
    return {
        "stated_count": 6,
        "triples": [
            {
                "left": side(a, ao, ad),
                "right": side(b, bo, bd),
                "shared": {"label": s, "order": so},
                "regular": reg,
                "intersection": None if x is None else {"label": x[0], "order": x[1]},
            }
            for a, ao, ad, b, bo, bd, s, so, reg, x in t
        ],
    }


def examples():
    def ex(name, left, right, shared, m, n, construction):
        return {"group": name, "left": left, "right": right, "shared": shared, "m": m, "n": n,
                "construction": construction}

    product = {"kind": "affine-product"}
    missing = {"kind": "not-constructible", "reason": "GL(2,3) has no 2-transitive affine action at this degree"}

    def extension(g):
        return {"kind": "affine-extension", "group": g}

    return {
        "rows": [
            ex("(3^2x5^2):SL(2,3)", "ASL2_3@9", "5^2:Q8:3@25", "SL(2,3)", 9, 25, product),
            ex("(3^2x5^2):GL(2,3)", "AGL2_3@9", None, "GL(2,3)", 9, 25, missing),
            ex("(3^2x7^2):GL(2,3)", "AGL2_3@9", None, "GL(2,3)", 9, 49, missing),
            ex("(5^2x7^2):GL(2,3)", None, None, "GL(2,3)", 25, 49, missing),
            ex("2^4:A6", "A6@6", "2^4:A5@16", "A5", 6, 16, extension("2^4:A6@16")),
            ex("2^4:S6", "S6@6", "2^4:S5@16", "S5", 6, 16, extension("2^4:S6@16")),
            ex("2^4:A7", "A7@7", "2^4:A6@16", "A6", 7, 16, extension("2^4:A7@16")),
            ex("2^4:A8", "A8@8", "2^4:A7@16", "A7", 8, 16, extension("2^4:A8@16")),
            ex("A8", "A7@15", "AGL3_2@8", "PSL(2,7)", 15, 8, {"kind": "factorisation", "group": "A8@8"}),
            ex("(5^2x11^2):SL(2,5)", "ASL2_5@25", "11^2:SL2_5@121", "SL(2,5)", 25, 121, product),
            ex("(13^2x3^6):SL(2,13)", "ASL2_13@169", "3^6:SL2_13@729", "SL(2,13)", 169, 729, product),
        ]
    }


def main():
    cat = DATA / "catalog"
    cat.mkdir(parents=True, exist_ok=True)
    for old in cat.glob("*.json"):
        old.unlink()
    entries = almost_simple() + affine()
    ids = [e["id"] for e in entries]
    assert len(ids) == len(set(ids))
    for e in entries:
        (cat / f"{slug(e['id'])}.json").write_text(json.dumps(e, indent=2) + "\n")
    golden = DATA / "golden"
    golden.mkdir(exist_ok=True)
    for name, obj in [("table1", table1()), ("three_arc", three_arc()), ("examples", examples())]:
        (golden / f"{name}.json").write_text(json.dumps(obj, indent=2) + "\n")
    print(f"{len(entries)} entries")


if __name__ == "__main__":
    main()
