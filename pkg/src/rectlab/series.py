"""Exact truncated power series engine and the generating-function checks.

Everything is computed over exact rationals.  The ten case systems are data
(expression trees parsed from data/case_systems.txt) so their transcription
can be audited line by line; solving is a plain fixed-point iteration, which
is a contraction because every right-hand side gains valuation.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

# ---------------------------------------------------------------------------
# univariate truncated series


class QSeries:
    """Power series in t truncated at a fixed order, exact rational coeffs."""

    __slots__ = ("order", "c")

    def __init__(self, order, coeffs=None):
        self.order = order
        if coeffs is None:
            self.c = [Fraction(0)] * (order + 1)
        else:
            self.c = [Fraction(x) for x in coeffs[:order + 1]]
            self.c += [Fraction(0)] * (order + 1 - len(self.c))

    @staticmethod
    def const(order, value):
        s = QSeries(order)
        s.c[0] = Fraction(value)
        return s

    @staticmethod
    def t(order):
        s = QSeries(order)
        if order >= 1:
            s.c[1] = Fraction(1)
        return s

    def copy(self):
        s = QSeries(self.order)
        s.c = list(self.c)
        return s

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self.order == other.order and self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash((self.order, tuple(self.c)))

    def is_zero(self):
        return all(x == 0 for x in self.c)

    def valuation(self):
        for i, x in enumerate(self.c):
            if x != 0:
                return i
        return None  # +infinity

    def coeff(self, k):
        return self.c[k] if 0 <= k <= self.order else Fraction(0)

    def __add__(self, other):
        other = _coerce(other, self.order)
        s = QSeries(self.order)
        s.c = [a + b for a, b in zip(self.c, other.c)]
        return s

    __radd__ = __add__

    def __neg__(self):
        s = QSeries(self.order)
        s.c = [-a for a in self.c]
        return s

    def __sub__(self, other):
        return self + (-_coerce(other, self.order))

    def __rsub__(self, other):
        return _coerce(other, self.order) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            s = QSeries(self.order)
            s.c = [a * other for a in self.c]
            return s
        other = _coerce(other, self.order)
        N = self.order
        out = [Fraction(0)] * (N + 1)
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            for j in range(0, N + 1 - i):
                b = other.c[j]
                if b != 0:
                    out[i + j] += a * b
        s = QSeries(N)
        s.c = out
        return s

    __rmul__ = __mul__

    def inverse(self):
        if self.c[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        N = self.order
        inv = [Fraction(0)] * (N + 1)
        inv[0] = 1 / self.c[0]
        for k in range(1, N + 1):
            acc = Fraction(0)
            for i in range(1, k + 1):
                acc += self.c[i] * inv[k - i]
            inv[k] = -acc / self.c[0]
        s = QSeries(N)
        s.c = inv
        return s

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError
            return self * (Fraction(1) / Fraction(other))
        return self * _coerce(other, self.order).inverse()

    def __rtruediv__(self, other):
        return _coerce(other, self.order) / self

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        result = QSeries.const(self.order, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sqrt(self):
        """Branch with positive constant term; constant must be a rational
        square."""
        c0 = self.c[0]
        r0 = _fraction_sqrt(c0)
        N = self.order
        out = [Fraction(0)] * (N + 1)
        out[0] = r0
        for k in range(1, N + 1):
            acc = Fraction(0)
            for i in range(1, k):
                acc += out[i] * out[k - i]
            out[k] = (self.c[k] - acc) / (2 * r0)
        s = QSeries(N)
        s.c = out
        return s

    def shift(self, k):
        """Multiply by t**k (k >= 0) or divide exactly by t**-k (k < 0).

        Dividing discards the top -k coefficients' worth of precision; the
        result still has the same nominal order, so callers must evaluate
        with slack and truncate (see eval_formula).
        """
        s = QSeries(self.order)
        if k >= 0:
            for i in range(self.order + 1 - k):
                s.c[i + k] = self.c[i]
            return s
        m = -k
        if any(x != 0 for x in self.c[:m]):
            raise ValueError(f"series not divisible by t^{m}")
        for i in range(m, self.order + 1):
            s.c[i - m] = self.c[i]
        return s

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return QSeries(order, self.c[:order + 1])

    def integer_coeffs(self):
        return [int(x) if x.denominator == 1 else x for x in self.c]

    def __repr__(self):
        terms = [f"{x}*t^{i}" for i, x in enumerate(self.c[:8]) if x != 0]
        return "QSeries(" + (" + ".join(terms) or "0") + f" + O(t^{self.order + 1}))"


def _coerce(x, order):
    if isinstance(x, QSeries):
        if x.order != order:
            raise ValueError("mixed truncation orders")
        return x
    return QSeries.const(order, x)


def _fraction_sqrt(q):
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative constant term under sqrt")
    pn, pd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if pn * pn != q.numerator or pd * pd != q.denominator:
        raise ValueError(f"constant term {q} is not a rational square")
    return Fraction(pn, pd)


def catalan(N):
    """Catalan number series via the convolution recurrence."""
    c = [Fraction(0)] * (N + 1)
    c[0] = Fraction(1)
    for n in range(N):
        c[n + 1] = sum(c[i] * c[n - i] for i in range(n + 1))
    s = QSeries(N)
    s.c = c
    return s


# ---------------------------------------------------------------------------
# expression parsing (shared by case systems and spot formulas)


class _Dual:
    """Value plus derivative with respect to one designated unknown."""

    __slots__ = ("v", "d")

    def __init__(self, v, d):
        self.v, self.d = v, d

    def _lift(self, x, like):
        if isinstance(x, _Dual):
            return x
        return _Dual(_coerce(x, like.order), QSeries(like.order))

    def __add__(self, o):
        o = self._lift(o, self.v)
        return _Dual(self.v + o.v, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return _Dual(-self.v, -self.d)

    def __sub__(self, o):
        o = self._lift(o, self.v)
        return _Dual(self.v - o.v, self.d - o.d)

    def __rsub__(self, o):
        return self._lift(o, self.v) - self

    def __mul__(self, o):
        o = self._lift(o, self.v)
        return _Dual(self.v * o.v, self.v * o.d + self.d * o.v)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o, self.v)
        inv = o.v.inverse()
        return _Dual(self.v * inv, (self.d * o.v - self.v * o.d) * inv * inv)

    def __rtruediv__(self, o):
        return self._lift(o, self.v) / self

    def __pow__(self, k):
        result = _Dual(QSeries.const(self.v.order, 1), QSeries(self.v.order))
        base = self
        for _ in range(k):
            result = result * base
        return result

    def sqrt(self):
        r = self.v.sqrt()
        return _Dual(r, self.d * r.inverse() * Fraction(1, 2))


def _sqrt_of(x):
    return x.sqrt()


_ALLOWED_FUNCS = {"sqrt": _sqrt_of}


def parse_expr(text):
    """Compile an arithmetic expression over named series into a closure.

    Supports + - * / ^ (or **), integer literals, names, and sqrt(...).
    """
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node, env):
        if isinstance(node, ast.Expression):
            return ev(node.body, env)
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left, env), ev(node.right, env)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if isinstance(b, QSeries) and b.c[0] == 0:
                    v = b.valuation()
                    if isinstance(a, (int, Fraction)):
                        a = QSeries.const(b.order, a)
                    return a.shift(-v) * b.shift(-v).inverse()
                return a / b
            if isinstance(node.op, ast.Pow):
                if not isinstance(b, int):
                    raise ValueError("exponent must be an integer literal")
                return a ** b
            raise ValueError(f"operator {node.op} not allowed")
        if isinstance(node, ast.UnaryOp):
            a = ev(node.operand, env)
            if isinstance(node.op, ast.USub):
                return -a
            if isinstance(node.op, ast.UAdd):
                return a
            raise ValueError("unary operator not allowed")
        if isinstance(node, ast.Constant):
            if isinstance(node.value, int):
                return node.value
            raise ValueError(f"literal {node.value!r} not allowed")
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise ValueError(f"unknown name {node.id!r}")
            return env[node.id]
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in _ALLOWED_FUNCS:
                raise ValueError("only sqrt(...) calls allowed")
            return _ALLOWED_FUNCS[node.func.id](ev(node.args[0], env))
        raise ValueError(f"syntax node {type(node).__name__} not allowed")

    return lambda env: ev(tree, env)


# ---------------------------------------------------------------------------
# case specifications


@dataclass
class CaseSpec:
    case_id: int
    row: str
    unknowns: list
    equations: dict          # name -> expression closure
    equation_text: dict      # name -> source text
    f_expr: object           # closure for F
    closed_form: object = None
    closed_text: str = ""
    poly: object = None      # closure in t and F, should vanish on the GF
    poly_text: str = ""
    poly_arg: str = "F"      # series substituted for F in poly: "F" or "1+F"


def _data_text(name):
    return resources.files("rectlab.data").joinpath(name).read_text()


def load_cases(text=None):
    """Parse data/case_systems.txt into CaseSpec objects keyed by case id."""
    if text is None:
        text = _data_text("case_systems.txt")
    cases, cur = {}, None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[case"):
            cid = int(line.strip("[]").split()[1])
            cur = CaseSpec(cid, "", [], {}, {}, None)
            cases[cid] = cur
        elif line.startswith("row"):
            cur.row = line.split("=", 1)[1].strip()
        elif line.startswith("unknowns"):
            cur.unknowns = line.split("=", 1)[1].split()
        elif line.startswith("eq "):
            lhs, rhs = line[3:].split("=", 1)
            cur.equations[lhs.strip()] = parse_expr(rhs.strip())
            cur.equation_text[lhs.strip()] = rhs.strip()
        elif line.startswith("F"):
            cur.f_expr = parse_expr(line.split("=", 1)[1].strip())
        elif line.startswith("closed"):
            cur.closed_text = line.split("=", 1)[1].strip()
            cur.closed_form = parse_expr(cur.closed_text)
        elif line.startswith("poly_arg"):
            cur.poly_arg = line.split("=", 1)[1].strip()
        elif line.startswith("poly"):
            cur.poly_text = line.split("=", 1)[1].strip()
            cur.poly = parse_expr(cur.poly_text)
        else:
            raise ValueError(f"bad line in case data: {raw!r}")
    return cases


class NonContractionError(RuntimeError):
    """A mistranscribed system: the iteration stopped gaining valuation."""


def solve_system(case, N):
    """Unique fixed point of a case's system, iterating from zero.

    Returns {'F': series, unknown: series, ...}.  Each iteration must
    increase the valuation of the change, else NonContractionError.
    """
    t = QSeries.t(N)
    vals = {u: QSeries(N) for u in case.unknowns}
    prev_vals = (-1, -1)
    for _ in range(2 * N + 8):
        env = {"t": t, **vals}
        new = {u: case.equations[u](env) for u in case.unknowns}
        deltas = [new[u] - vals[u] for u in case.unknowns]
        if all(d.is_zero() for d in deltas):
            vals = new
            break
        v = min(d.valuation() for d in deltas if not d.is_zero())
        # single steps may gain nothing (auxiliary unknowns feeding each
        # other), but a window of two without progress means no contraction
        if v <= prev_vals[0]:
            raise NonContractionError(
                f"case {case.case_id}: change valuation stuck at {v}")
        prev_vals = (prev_vals[1], v)
        vals = new
    else:
        raise NonContractionError(f"case {case.case_id}: no fixed point by order {N}")
    env = {"t": t, **vals}
    out = dict(vals)
    out["F"] = case.f_expr(env)
    return out


DIV_SLACK = 8


def eval_formula(expr, N, slack=DIV_SLACK):
    """Evaluate a closed-form expression in t exactly to order N.

    Division by a series of valuation v discards v top coefficients, so the
    evaluation runs at order N + slack and is truncated down afterwards.
    """
    return expr({"t": QSeries.t(N + slack)}).truncate(N)


def verify_theorem1(case, N):
    """Closed-form cases: expansion equals the system's F.  Polynomial cases:
    the residual vanishes.  Returns (ok, first_bad_index_or_None)."""
    sol = solve_system(case, N)
    F = sol["F"]
    if case.closed_form is not None:
        diff = F - eval_formula(case.closed_form, N)
    else:
        arg = F + 1 if case.poly_arg == "1+F" else F
        diff = case.poly({"t": QSeries.t(N), "F": arg})
    if diff.is_zero():
        return True, None
    return False, diff.valuation()


def algebraic_root(poly_expr, N):
    """Power-series root with zero constant term of P(t, F) = 0, by Newton
    iteration with automatic differentiation in F."""
    t = QSeries.t(N)
    F = QSeries(N)
    zero, one = QSeries(N), QSeries.const(N, 1)
    for _ in range(N.bit_length() + 3):
        d = poly_expr({"t": _Dual(t, zero), "F": _Dual(F, one)})
        if d.v.is_zero():
            return F
        dF = d.d
        if dF.c[0] == 0:
            raise ValueError("branch ambiguity: dP/dF vanishes at the origin")
        F = F - d.v * dF.inverse()
    d = poly_expr({"t": _Dual(t, zero), "F": _Dual(F, one)})
    if not d.v.is_zero():
        raise ValueError("Newton iteration did not converge")
    return F


# ---------------------------------------------------------------------------
# vortex pipeline

def case10_series(N):
    t = QSeries.t(N)
    return parse_expr("t*(1-2*t)/(1-4*t+2*t^2)")({"t": t})


def whirl_pipeline(N):
    """P, W, Z, V of the vortex composition; verifies the stated identities.

    Returns a dict with the four series; raises AssertionError with a witness
    index if an identity fails.
    """
    M = N + 4  # slack for the division by t^3 in the radical form
    t = QSeries.t(M)
    C = catalan(M)
    P = (t ** 5) * C ** 4 * (2 / (1 - (1 / (1 - t) ** 2 - 1)) - 1)
    W = 1 / (1 - P.shift(-1))
    Z = case10_series(M)
    V = W * Z
    closed = t * C ** 2 * (1 + t ** 2 * C ** 4)
    diff = (V - closed).truncate(N)
    if not diff.is_zero():
        raise AssertionError(f"V != tC^2(1+t^2C^4) first at order {diff.valuation()}")
    # the negative square-root branch is forced: with the positive one the
    # numerator has a nonzero constant term and the t^3 division is a pole
    radical = ((1 - 2 * t) * ((1 - 4 * t + 2 * t ** 2)
               - (1 - 2 * t) * (1 - 4 * t).sqrt())).shift(-3) * Fraction(1, 2)
    diff2 = (V - radical).truncate(N)
    if not diff2.is_zero():
        raise AssertionError(f"V != radical form first at order {diff2.valuation()}")
    return {"P": P.truncate(N), "W": W.truncate(N), "Z": Z.truncate(N),
            "V": V.truncate(N), "C": C.truncate(N)}


def vortex_recurrence(K, V=None):
    """v_0..v_K with v_n = [t^(n+1)] V, via the linear recurrence
    (n+4) v_n = 6(n+2) v_{n-1} - 4(2n-1) v_{n-2}; divisions must be exact."""
    if K < 1:
        raise ValueError("K must be >= 1")
    v = [1, 2]
    for n in range(2, K + 1):
        num = 6 * (n + 2) * v[n - 1] - 4 * (2 * n - 1) * v[n - 2]
        q, r = divmod(num, n + 4)
        if r:
            raise AssertionError(f"recurrence not integral at n={n}")
        v.append(q)
    if V is not None:
        for n in range(0, min(K, V.order - 1) + 1):
            if V.coeff(n + 1) != v[n]:
                raise AssertionError(f"recurrence disagrees with V at n={n}")
    return v


# exact rational bounds for sqrt(pi), 30 digits
SQRT_PI_LO = Fraction(1772453850905516027298167483341, 10 ** 30)
SQRT_PI_HI = Fraction(1772453850905516027298167483342, 10 ** 30)


def _sqrt_bounds(n, digits=25):
    scale = 10 ** digits
    r = math.isqrt(n * scale * scale)
    return Fraction(r, scale), Fraction(r + 1, scale)


def asymptotic_ratio(n, v_n=None):
    """Exact rational interval for v_n * sqrt(pi) * n^(3/2) / 4^(n+2).

    The interval brackets the true ratio; its width reflects only the
    sqrt(pi) and sqrt(n) bounds.
    """
    if v_n is None:
        v_n = vortex_recurrence(n)[n]
    s_lo, s_hi = _sqrt_bounds(n ** 3)
    denom = 4 ** (n + 2)
    lo = Fraction(v_n) * SQRT_PI_LO * s_lo / denom
    hi = Fraction(v_n) * SQRT_PI_HI * s_hi / denom
    return lo, hi


# ---------------------------------------------------------------------------
# multivariate polynomials over QSeries (x1..x4)


class XPoly:
    """Polynomial in x1..x4 with QSeries coefficients, same t-order all over."""

    __slots__ = ("order", "monos")

    def __init__(self, order, monos=None):
        self.order = order
        self.monos = {}
        if monos:
            for e, s in monos.items():
                if not s.is_zero():
                    self.monos[e] = s

    @staticmethod
    def zero(order):
        return XPoly(order)

    @staticmethod
    def monomial(order, exps, series=None):
        p = XPoly(order)
        s = series if series is not None else QSeries.const(order, 1)
        if not s.is_zero():
            p.monos[tuple(exps)] = s
        return p

    def copy(self):
        p = XPoly(self.order)
        p.monos = {e: s.copy() for e, s in self.monos.items()}
        return p

    def is_zero(self):
        return not self.monos

    def __eq__(self, other):
        return isinstance(other, XPoly) and self.order == other.order \
            and self.monos == other.monos

    def __add__(self, other):
        p = self.copy()
        for e, s in other.monos.items():
            cur = p.monos.get(e)
            new = s if cur is None else cur + s
            if new.is_zero():
                p.monos.pop(e, None)
            else:
                p.monos[e] = new
        return p

    def __sub__(self, other):
        return self + other.__neg__()

    def __neg__(self):
        p = XPoly(self.order)
        p.monos = {e: -s for e, s in self.monos.items()}
        return p

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QSeries)):
            p = XPoly(self.order)
            for e, s in self.monos.items():
                ns = s * other
                if not ns.is_zero():
                    p.monos[e] = ns
            return p
        p = XPoly(self.order)
        for e1, s1 in self.monos.items():
            for e2, s2 in other.monos.items():
                s = s1 * s2
                if s.is_zero():
                    continue
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                cur = p.monos.get(e)
                new = s if cur is None else cur + s
                if new.is_zero():
                    p.monos.pop(e, None)
                else:
                    p.monos[e] = new
        return p

    __rmul__ = __mul__

    def t_shift(self, k=1):
        p = XPoly(self.order)
        for e, s in self.monos.items():
            ns = s.shift(k)
            if not ns.is_zero():
                p.monos[e] = ns
        return p

    def x_shift(self, exps):
        """Multiply by the monomial x^exps."""
        p = XPoly(self.order)
        for e, s in self.monos.items():
            p.monos[(e[0] + exps[0], e[1] + exps[1],
                     e[2] + exps[2], e[3] + exps[3])] = s.copy()
        return p

    def subs_one(self, i):
        """Substitute x_i = 1."""
        p = XPoly(self.order)
        for e, s in self.monos.items():
            ne = list(e)
            ne[i] = 0
            ne = tuple(ne)
            cur = p.monos.get(ne)
            new = s if cur is None else cur + s
            if new.is_zero():
                p.monos.pop(ne, None)
            else:
                p.monos[ne] = new
        return p

    def extract(self, i, power=1):
        """Coefficient of x_i**power (the variable disappears)."""
        p = XPoly(self.order)
        for e, s in self.monos.items():
            if e[i] == power:
                ne = list(e)
                ne[i] = 0
                p.monos[tuple(ne)] = s.copy()
        return p

    def divided_difference(self, i):
        """(f - f|_{x_i=1}) / (x_i - 1), expanded per monomial as the
        geometric sum 1 + x_i + ... + x_i^(e-1); always exact."""
        p = XPoly(self.order)
        for e, s in self.monos.items():
            for j in range(e[i]):
                ne = list(e)
                ne[i] = j
                ne = tuple(ne)
                cur = p.monos.get(ne)
                new = s if cur is None else cur + s
                if new.is_zero():
                    p.monos.pop(ne, None)
                else:
                    p.monos[ne] = new
        return p

    def subs_all_one(self):
        """QSeries value at x1 = x2 = x3 = x4 = 1."""
        out = QSeries(self.order)
        for s in self.monos.values():
            out = out + s
        return out

    def permute_vars(self, perm):
        """Relabel variables: new x_i = old x_perm[i]."""
        p = XPoly(self.order)
        inv = [0] * 4
        for i, j in enumerate(perm):
            inv[j] = i
        for e, s in self.monos.items():
            ne = tuple(e[perm[i]] for i in range(4))
            p.monos[ne] = s.copy()
        return p

    def coeff_t(self, k):
        """{exps: Fraction} for the t^k coefficient."""
        return {e: s.coeff(k) for e, s in self.monos.items() if s.coeff(k) != 0}

    def grade_part(self, g):
        p = XPoly(self.order)
        for e, s in self.monos.items():
            if sum(e) == g:
                p.monos[e] = s.copy()
        return p

    def max_grade(self):
        return max((sum(e) for e in self.monos), default=-1)


def elementary_symmetric(order):
    """e_1..e_4 in x1..x4 as XPolys with constant QSeries coefficients."""
    import itertools as it
    out = {}
    for m in range(1, 5):
        p = XPoly(order)
        for combo in it.combinations(range(4), m):
            e = [0, 0, 0, 0]
            for i in combo:
                e[i] = 1
            p.monos[tuple(e)] = QSeries.const(order, 1)
        out[m] = p
    return out


# ---------------------------------------------------------------------------
# the functional equation for simple whirls


def funceq_rhs(F, N):
    """One application of the whirl functional equation's right-hand side."""
    t5 = XPoly.monomial(N, (1, 1, 1, 1), QSeries.t(N) ** 5)

    # rule 1: t * x1 x2 x3 x4 * [x3 x4] F(t, 1, x2, x3, x4)
    g = F.subs_one(0).extract(2).extract(3)
    term1 = g.x_shift((1, 1, 1, 1)).t_shift()

    # rule 2: t * x1 x2 x3 x4 * DD_x2([x1 x4] F)
    g = F.extract(0).extract(3).divided_difference(1)
    term2 = g.x_shift((1, 1, 1, 1)).t_shift()

    # rule 3: t * x1 x3 x4 * DD_x3([x1] F)
    g = F.extract(0).divided_difference(2)
    term3 = g.x_shift((1, 0, 1, 1)).t_shift()

    # rule 4: t * x1 x4 * DD_x4(F)
    g = F.divided_difference(3)
    term4 = g.x_shift((1, 0, 0, 1)).t_shift()

    return t5 + term1 + term2 + term3 + term4


def solve_funceq(N):
    """Unique fixed point of the whirl functional equation, to t-order N."""
    F = XPoly.zero(N)
    for _ in range(N + 2):
        new = funceq_rhs(F, N)
        if new == F:
            return F
        F = new
    raise NonContractionError("functional equation iteration did not settle")


def closed_form_F(N):
    """Expand the algebraic closed form of the whirl generating function.

    F = t^5 (beta - sqrt(beta^2 - 4 alpha e4^2)) / (2 alpha) with
    alpha = prod(1 - x_i + t x_i^2) and
    beta  = (2 e4 t^2 - t (4 e4 - 3 e3 + 2 e2) + e4 - e3 + e2 - e1 + 2) e4.
    The radical is e4 * sqrt(inner) with inner = core^2 - 4 alpha, expanded
    grade by grade; the branch is fixed by the t^5 x1x2x3x4 term.

    All x-grades up to N are computed exactly; monomials of higher grade are
    dropped (they only carry t-orders beyond N anyway, since a size-n whirl
    has signature sum at most n - 1).
    """
    cap = N
    t = QSeries.t(N)
    e = elementary_symmetric(N)
    one = XPoly.monomial(N, (0, 0, 0, 0))
    alpha = one
    for i in range(4):
        xi = [0, 0, 0, 0]
        xi[i] = 1
        xi2 = [0, 0, 0, 0]
        xi2[i] = 2
        factor = one - XPoly.monomial(N, tuple(xi)) \
            + XPoly.monomial(N, tuple(xi2), t)
        alpha = alpha * factor
    core = (e[4] * (QSeries.t(N) ** 2 * 2) - (e[4] * 4 - e[3] * 3 + e[2] * 2) * t
            + e[4] - e[3] + e[2] - e[1] + one * 2)

    inner = core * core - alpha * 4  # equals (beta^2 - 4 alpha e4^2) / e4^2
    root = _graded_sqrt(inner, N, cap)

    for candidate in (root, -root):
        num = (core - candidate) * e[4]
        F = _xdiv_unit(num, alpha * 2, N, cap).t_shift(5)
        F = _grade_truncate(F, cap)
        lead = F.coeff_t(5)
        if lead == {(1, 1, 1, 1): Fraction(1)}:
            return F
    raise AssertionError("neither square-root branch matches the t^5 term")


def _grade_truncate(p, cap):
    out = XPoly(p.order)
    out.monos = {e: s for e, s in p.monos.items() if sum(e) <= cap}
    return out


def _graded_sqrt(f, N, cap):
    """sqrt of an XPoly whose lowest x-grade is 2 with square leading part,
    computed exactly for all grades <= cap.

    Solves g^2 = f grade by grade; each step divides by twice the grade-1
    part, which here is e1 * sqrt(1 - 4t) (division by e1 must be exact).
    """
    f2 = f.grade_part(2)
    r = (QSeries.const(N, 1) - QSeries.t(N) * 4).sqrt()
    # leading part must be e1^2 (1 - 4t)
    g1 = XPoly(N)
    for i in range(4):
        e = [0, 0, 0, 0]
        e[i] = 1
        g1.monos[tuple(e)] = r.copy()
    if not (g1 * g1 - f2).is_zero():
        raise AssertionError("grade-2 part of the radical is not (e1 sqrt(1-4t))^2")
    parts = {1: g1}
    inv2r = (r * 2).inverse()
    for m in range(3, cap + 2):
        acc = f.grade_part(m)
        for i in range(2, m - 1):
            j = m - i
            if i <= j:
                prod = parts[i] * parts[j]
                acc = acc - (prod * 2 if i != j else prod)
        parts[m - 1] = _divide_by_e1(acc, N) * inv2r
    g = XPoly(N)
    for p in parts.values():
        g = g + p
    return g


def _divide_by_e1(f, N):
    """Exact division by x1 + x2 + x3 + x4 (lex reduction; asserts exactness)."""
    q = XPoly(N)
    work = f.copy()
    while work.monos:
        e = max(work.monos)  # lex max
        s = work.monos[e]
        if e[0] == 0:
            raise AssertionError("polynomial not divisible by e1")
        qe = (e[0] - 1, e[1], e[2], e[3])
        qterm = XPoly.monomial(N, qe, s)
        q = q + qterm
        sub = XPoly(N)
        for i in range(4):
            ee = list(qe)
            ee[i] += 1
            ee = tuple(ee)
            cur = sub.monos.get(ee)
            sub.monos[ee] = s if cur is None else cur + s
        work = work - sub
    return q


def _xdiv_unit(num, den, N, cap):
    """num / den for XPolys where den has a unit grade-0 part; the quotient
    is exact for all grades <= cap and truncated there."""
    d0 = den.monos.get((0, 0, 0, 0))
    if d0 is None or d0.c[0] == 0:
        raise ZeroDivisionError("denominator is not a unit")
    inv0 = d0.inverse()
    rest = (den - XPoly.monomial(N, (0, 0, 0, 0), d0)) * inv0
    acc = XPoly.monomial(N, (0, 0, 0, 0))
    term = XPoly.monomial(N, (0, 0, 0, 0))
    sign = -1
    while True:
        term = _grade_truncate(term * rest, cap)
        if term.is_zero():
            break
        acc = acc + term * sign
        sign = -sign
    inv = acc * inv0
    return _grade_truncate(num * inv, cap)


def whirl_census(N):
    """Signature-weighted sum over the generating tree, to t-order N:
    sum over simple whirls of t^size * prod x_i^(s_i).  Independent of the
    functional equation (pure tree walk)."""
    from .generators import ROOT_SIGNATURE, signature_children
    F = XPoly.zero(N)
    level = [ROOT_SIGNATURE]
    size = 5
    while size <= N:
        for sig in level:
            s = F.monos.get(sig)
            if s is None:
                s = QSeries(N)
                F.monos[sig] = s
            s.c[size] += 1
        nxt = []
        for sig in level:
            nxt.extend(ch for _, _, ch in signature_children(sig))
        level = nxt
        size += 1
    return F
