"""Smoke test for the polar_rank_py extension module.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

import itertools

import polar_rank_py as pr


def gf_rank(rows, cols, p):
    """Plain Gaussian elimination over GF(p), independent of the library."""
    mat = [list(r) for r in rows]
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c] % p), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][c], p - 2, p)
        mat[rank] = [x * inv % p for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][c] % p:
                f = mat[i][c]
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def dense(supports, cols):
    out = []
    for s in supports:
        row = [0] * cols
        for c in s:
            row[c] = 1
        out.append(row)
    return out


def digit_counts(m, p):
    counts = [0] * (2 * m * (p - 1) + 1)
    for digits in itertools.product(range(p), repeat=2 * m):
        counts[sum(digits)] += 1
    return counts


def main():
    assert pr.__version__

    supports = pr.incidence(2, 3, 1)
    assert len(supports) == 40 and all(len(s) == 4 for s in supports)
    assert gf_rank(dense(supports, 40), 40, 3) == 25
    assert pr.rank_oracle(2, 3, 1) == 25
    assert pr.rank_mod(dense(supports, 40), 3) == 25

    report = pr.verify(2, 3, 1, r=3)
    assert report["formula"] == report["oracle"] == 11 and report["match"]
    assert pr.rank_formula(2, 3, 2)["formula"] == 425
    assert pr.rank_formula(3, 3, 1)["formula"] == 196

    assert pr.rank_via_trace(2, 3, 3) == 8353
    assert [pr.rank_w3_char2(t) for t in (1, 2)] == [10, 50]
    # exact big integers cross the boundary intact
    assert pr.rank_via_trace(2, 7, 20) > 2**64

    for m, p in [(2, 3), (2, 5), (3, 3)]:
        table = pr.dimension_table(m, p)
        assert table == digit_counts(m, p)
        plus, minus = pr.dim_s_plus_minus(m, p)
        assert plus + minus == table[m * (p - 1)] and plus - minus == p**m
        d = pr.d_matrix(m, p)
        assert 1 + sum(d[i][i] for i in range(m)) == pr.rank_via_trace(m, p, 1)
    assert pr.dim_s_plus_minus(2, 3) == (14, 5)

    checks = pr.verify_lemmas(2, 3, 1, suites=["tau", "basis"])
    assert checks and all(c["passed"] for c in checks), checks
    shift = pr.verify_lemmas(2, 3, 1, suites=["shift"])[0]
    assert shift["name"] == "shift-operator" and shift["failures"] == 81

    for bad in [lambda: pr.rank_formula(2, 2, 1), lambda: pr.rank_oracle(2, 3, 4), lambda: pr.incidence(2, 3, 1, 4)]:
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
