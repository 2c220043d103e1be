"""Exact rational linear-programming feasibility (phase-1 simplex).

Used by the matrix-type classifier: the three Vinberg-style systems are
posed over nonnegative variables with strict inequalities replaced by
margin-1 slacks, and solved exactly over Fractions with Bland's rule
(which guarantees termination).  Problems here are tiny (one variable
per graph node), so no effort is spent on sparsity or revised simplex.
"""

from fractions import Fraction

LE, GE, EQ = "<=", ">=", "=="


def feasible(constraints, num_vars):
    """Decide feasibility of a system over nonnegative variables.

    constraints: iterable of (coeffs, rel, rhs) with rel in {"<=", ">=", "=="},
    coeffs a length-num_vars sequence.  All data is coerced to Fraction.

    Returns (ok, x) where x is a satisfying assignment (length num_vars)
    when ok, else None.
    """
    rows = []        # tableau rows, each length total+1 (rhs last)
    basis = []
    # normalize so every rhs is nonnegative
    normalized = []
    for coeffs, rel, rhs in constraints:
        coeffs = [Fraction(c) for c in coeffs]
        rhs = Fraction(rhs)
        assert len(coeffs) == num_vars
        if rhs < 0:
            coeffs = [-c for c in coeffs]
            rhs = -rhs
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        normalized.append((coeffs, rel, rhs))

    m = len(normalized)
    n_slack = sum(1 for _, rel, _ in normalized if rel != EQ)
    n_art = sum(1 for _, rel, _ in normalized if rel != LE)
    total = num_vars + n_slack + n_art

    slack_at = num_vars
    art_at = num_vars + n_slack
    art_cols = set()
    for coeffs, rel, rhs in normalized:
        row = coeffs + [Fraction(0)] * (n_slack + n_art) + [rhs]
        if rel == LE:
            row[slack_at] = Fraction(1)
            basis.append(slack_at)
            slack_at += 1
        elif rel == GE:
            row[slack_at] = Fraction(-1)
            slack_at += 1
            row[art_at] = Fraction(1)
            basis.append(art_at)
            art_cols.add(art_at)
            art_at += 1
        else:
            row[art_at] = Fraction(1)
            basis.append(art_at)
            art_cols.add(art_at)
            art_at += 1
        rows.append(row)

    # phase-1 objective: minimize the sum of artificials; price out the basis
    obj = [Fraction(0)] * (total + 1)
    for j in art_cols:
        obj[j] = Fraction(1)
    for i, b in enumerate(basis):
        if b in art_cols:
            row = rows[i]
            for j in range(total + 1):
                obj[j] -= row[j]

    while True:
        enter = next((j for j in range(total) if obj[j] < 0), None)
        if enter is None:
            break
        # ratio test with Bland tie-break on the leaving basis variable
        leave, best = None, None
        for i in range(m):
            coef = rows[i][enter]
            if coef > 0:
                ratio = rows[i][total] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        assert leave is not None, "phase-1 objective is bounded below by 0"
        _pivot(rows, obj, basis, leave, enter, total)

    if -obj[total] != 0:  # residual artificial value
        return False, None
    x = [Fraction(0)] * num_vars
    for i, b in enumerate(basis):
        if b < num_vars:
            x[b] = rows[i][total]
    return True, x


def _pivot(rows, obj, basis, leave, enter, total):
    piv = rows[leave][enter]
    rows[leave] = [v / piv for v in rows[leave]]
    for i, row in enumerate(rows):
        if i != leave and row[enter] != 0:
            f = row[enter]
            rows[i] = [v - f * p for v, p in zip(row, rows[leave])]
    if obj[enter] != 0:
        f = obj[enter]
        for j in range(total + 1):
            obj[j] -= f * rows[leave][j]
    basis[leave] = enter


def rational_rank(matrix):
    """Rank of a matrix over the rationals (exact Gaussian elimination)."""
    rows = [[Fraction(v) for v in row] for row in matrix]
    if not rows:
        return 0
    n_cols = len(rows[0])
    rank = 0
    for col in range(n_cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / lead
                rows[i] = [v - f * p for v, p in zip(rows[i], rows[rank])]
        rank += 1
    return rank
