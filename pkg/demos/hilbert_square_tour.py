"""Walk from a K3 surface to its Hilbert square and print the key numbers."""
from chowkit.bb import fujiki_lambda, weak_splitting_check
from chowkit.gca import dch, integrate
from chowkit.models import k3_config
from chowkit.models.checks import context


def main(rho: int = 1):
    ctx = context(k3_config(rho))
    S, sq, Y, H = ctx.surface, ctx.square, ctx.curly, ctx.hilb
    print(f"K3 with Picard rank {rho}")
    print("  CH dims", S.chow.dims, " H dims", S.coh.dims)

    delta = sq.classes["[Delta]"]
    print("S x S")
    print("  CH dims", sq.chow.dims, " H dims", sq.coh.dims)
    print("  integral of [Delta]^2 =", integrate(delta * delta))

    e = Y.classes["[E]"]
    print("blow-up of S x S along the diagonal")
    print("  CH dims", Y.chow.dims, " H dims", Y.coh.dims)
    print("  [E]^2 = -eps^*[Delta]:", e * e == -Y.classes["eps^*[Delta]"])
    print("  [E]^3 = -24 i_*eta^*[o]:", e ** 3 == -24 * Y.classes["i_*eta^*o"])

    eb = H.classes["[Ebar]"]
    print("Hilbert square")
    print("  CH dims", H.chow.dims, " H dims", H.coh.dims)
    print("  integral of [Ebar]^4 =", integrate(eb ** 4))
    print("  Fujiki constant =", fujiki_lambda(H.chow, H.q).value)
    print("  DCH dims", tuple(dch(H.chow, p).dim for p in range(H.chow.top + 1)))
    v = weak_splitting_check(H, 2)
    print("  cycle map injective on DCH:", v.criterion_i, " kernels", v.kernel_dims)


if __name__ == "__main__":
    for rho in (1, 2, 3):
        main(rho)
        print()
