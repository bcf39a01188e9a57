"""Two blow-ups where the cycle map is not injective on DCH^2."""
from chowkit.gca import Subspace, dch, kernel_of
from chowkit.models import CurveConfig, k3_blown_at_point, k3_config, p3_blown_along_curve
from chowkit.models.checks import show


def report(M, expected):
    K = kernel_of(M.cycle.apply, dch(M.chow, 2))
    print(M.name)
    print("  DCH^2 dimension", dch(M.chow, 2).dim, " kernel dimension", K.dim)
    for w in K.basis():
        print("  kernel vector", show(w))
    print("  proportional to the expected witness:", Subspace.span(K.basis() + [expected]).dim == 1)
    print("  axioms:", "; ".join(M.axioms))


if __name__ == "__main__":
    # a point p with [p] != [o]: [q] - eps^*[o] is homologically trivial
    M = k3_blown_at_point(k3_config(1))
    report(M, M.classes["[q]"] - M.classes["eps^*o"])
    print()
    # a genus 2 curve of degree 5 in P^3: d K_B - (2g - 2) l_B has degree 0
    M = p3_blown_along_curve(CurveConfig(2, 5))
    report(M, 5 * M.classes["i_*eta^*KB"] - 2 * M.classes["i_*eta^*lB"])
