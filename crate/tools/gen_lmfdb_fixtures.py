#!/usr/bin/env python3
"""Synthesise offline LMFDB fixtures for genus-2 isogeny classes.

The public API is not reachable from the build machines, so the committed
fixtures are produced here instead of being recorded. The computation is a
separate implementation of Honda-Tate: Weil polynomials are tested with
sympy's real-root isolation, factored over Q with sympy, and each irreducible
factor h gets its period e(h) from its local Brauer invariants (real places
and the places above p, found from the Newton polygon and a p-adic root
search). A dimension-2 variety exists iff w = prod h_i^(m_i) with e(h_i) | m_i.

Output mirrors the wire format of /api/av_fq_isog/: one JSON document per
page with "data", "offset" and "next", stored under objects/<sha256>.json,
plus manifest.json.
"""

import hashlib
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import sympy as sp

X = sp.Symbol("x")
PAGE = 50
FORMAT_VERSION = 1
ENDPOINT = "av_fq_isog"

QUERIES = [
    (2, None),
    (4, None),
    (2, 0),
    (3, 0),
    (4, 0),
    (5, 0),
    (7, 0),
    (9, 0),
    (25, 0),
    (49, 0),
]


def prime_power(q):
    f = sp.factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, n), = f.items()
    return p, n


def is_weil(q, s1, s2):
    # w(x)/x^2 = u^2 - s1 u + (s2 - 2q) with u = x + q/x; w is a Weil
    # polynomial iff both roots u are real with u^2 <= 4q.
    u = sp.Symbol("u")
    roots = sp.real_roots(sp.Poly(u**2 - s1 * u + (s2 - 2 * q), u))
    if len(roots) != 2:
        return False
    return all(bool((r**2 - 4 * q).is_nonpositive) for r in roots)


def newton_segments(coeffs_desc, p):
    """Lower hull of (i, v_p(c_i)) for ascending exponent i; returns
    (slope, length) with slope = valuation of the roots."""
    c = list(reversed(coeffs_desc))
    pts = [(i, sp.multiplicity(p, a)) for i, a in enumerate(c) if a != 0]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append((Fraction(y1 - y2, x2 - x1), x2 - x1))
    return segs


def vp(a, p):
    if a == 0:
        return math.inf
    return sp.multiplicity(p, a)


def has_padic_root(coeffs_desc, p, s):
    """A root in Q_p of valuation exactly s (an integer): substitute
    x = p^s y and search unit y by residue classes mod p^k, accepting a class
    once Hensel's inequality v(f(r)) > 2 v(f'(r)) holds."""
    f = sp.Poly(coeffs_desc, X)
    g = sp.Poly(f.as_expr().subs(X, p**s * X), X)
    content = math.gcd(*[int(c) for c in g.all_coeffs()])
    g = sp.Poly(g.as_expr() / content, X)
    dg = g.diff(X)
    frontier = list(range(1, p))
    k = 1
    while frontier and k < 40:
        nxt = []
        for r in frontier:
            fr = int(g.eval(r))
            if fr % p**k != 0:
                continue
            vf = vp(fr, p)
            vd = vp(int(dg.eval(r)), p)
            if vf > 2 * vd:
                return True
            nxt.extend(r + j * p**k for j in range(p))
        frontier = nxt
        k += 1
    return False


def period(h, p, n):
    """Order of the class of End^0 of the simple variety attached to the
    irreducible Weil factor h, i.e. lcm of the denominators of its local
    invariants."""
    coeffs = [int(c) for c in sp.Poly(h, X).all_coeffs()]
    invs = []
    if any(sp.Poly(h, X).real_roots()):
        invs.append(Fraction(1, 2))
    for s, length in newton_segments(coeffs, p):
        lam = s / n
        den = s.denominator
        if den == 1 and length > 1:
            # a degree-1 place exists iff there is a Q_p root; otherwise in
            # genus 2 every place over this segment has even degree
            degrees = [1] if has_padic_root(coeffs, p, int(s)) else [2]
        else:
            degrees = [den]
        invs.extend(lam * d for d in degrees)
    e = 1
    for v in invs:
        e = e * v.denominator // math.gcd(e, v.denominator)
    return e


def encode(a):
    """LMFDB letter code for one coefficient: base 26, 'a' = 0, negative
    values prefixed by 'a'."""
    def b26(m):
        s = ""
        while True:
            s = chr(ord("a") + m % 26) + s
            m //= 26
            if m == 0:
                return s
    return b26(a) if a >= 0 else "a" + b26(-a)


def label(g, q, coeffs):
    return f"{g}.{q}." + "_".join(encode(c) for c in coeffs)


def classify(q, s1, s2):
    p, n = prime_power(q)
    w = X**4 - s1 * X**3 + s2 * X**2 - q * s1 * X + q**2
    _, factors = sp.factor_list(w)
    parts = []
    for h, m in factors:
        e = period(h, p, n)
        if m % e != 0:
            return None
        parts.append((h, m, e))
    simple = len(parts) == 1 and parts[0][1] == parts[0][2]
    segs = newton_segments([int(c) for c in sp.Poly(w, X).all_coeffs()], p)
    p_rank = sum(l for s, l in segs if s == 0)
    factors_out = []
    for h, m, e in parts:
        d = sp.Poly(h, X).degree() * e // 2
        if d == 1:
            hp = sp.Poly(h ** e, X).all_coeffs()
            a = -int(hp[1])
            factors_out += [label(1, q, [-a])] * (m // e)
    return {
        "p_rank": p_rank,
        "is_simple": simple,
        "is_supersingular": all(s == Fraction(n, 2) for s, _ in segs),
        "simple_distinct": sorted(set(factors_out)),
    }


def records(q, p_rank):
    p, n = prime_power(q)
    bound = math.isqrt(16 * q)
    out = []
    for s1 in range(-bound, bound + 1):
        for s2 in range(-2 * q, (s1 * s1 + 8 * q) // 4 + 1):
            if p_rank is not None:
                segs = newton_segments([1, -s1, s2, -q * s1, q * q], p)
                if sum(l for s, l in segs if s == 0) != p_rank:
                    continue
            if not is_weil(q, s1, s2):
                continue
            info = classify(q, s1, s2)
            if info is None:
                continue
            if p_rank is not None and info["p_rank"] != p_rank:
                continue
            a1, a2 = -s1, s2
            out.append({
                "label": label(2, q, [a1, a2]),
                "g": 2,
                "q": q,
                "p": p,
                "r": n,
                "poly": [1, a1, a2, q * a1, q * q],
                **info,
            })
    out.sort(key=lambda r: r["label"])
    return out


def query_string(q, p_rank, offset):
    s = f"g=i2&q=i{q}"
    if p_rank is not None:
        s += f"&p_rank=i{p_rank}"
    return s + f"&_format=json&_offset={offset}"


def main(dest):
    dest = Path(dest)
    (dest / "objects").mkdir(parents=True, exist_ok=True)
    entries = []
    for q, p_rank in QUERIES:
        recs = records(q, p_rank)
        pages = []
        for off in range(0, max(len(recs), 1), PAGE):
            nxt = off + PAGE
            doc = {
                "data": recs[off:off + PAGE],
                "offset": off,
                "next": f"/api/{ENDPOINT}/?{query_string(q, p_rank, nxt)}" if nxt < len(recs) else None,
            }
            body = json.dumps(doc, sort_keys=True, indent=1).encode() + b"\n"
            digest = hashlib.sha256(body).hexdigest()
            (dest / "objects" / f"{digest}.json").write_bytes(body)
            pages.append(digest)
        entries.append({
            "endpoint": ENDPOINT,
            "format_version": FORMAT_VERSION,
            "q": q,
            "p_rank": p_rank,
            "count": len(recs),
            "pages": pages,
            "fetched_at": 0,
        })
        print(f"q={q} p_rank={p_rank}: {len(recs)} records", file=sys.stderr)
    manifest = {"format_version": FORMAT_VERSION, "entries": entries}
    (dest / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "crates/lmfdb/fixtures")
