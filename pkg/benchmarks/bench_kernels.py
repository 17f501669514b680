"""Compare the compiled and pure-Python search kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each workload calls the kernel entry points directly, so the memo caches in
``laxcat.fincat`` do not hide the difference.
"""

import argparse
import random
import timeit
from array import array

from laxcat import _kernels_py, fixtures as fx, kernels
from laxcat.fincat import enumerate_functors, product_category

LIMIT = 1_000_000


def functor_job(impl, W, Y):
    kw, ky = W.kview(), Y.kview()

    def run():
        return impl.functor_search(
            W.n_obj, kw["dom"], kw["cod"], kw["ids"], kw["comp"],
            Y.n_obj, Y.n_mor, ky["ids"], ky["comp"], ky["hom_start"], ky["hom_len"], ky["hom_items"], LIMIT,
        )

    return run


def nat_job(impl, pairs):
    def run():
        n = 0
        for F, G in pairs:
            W, Y = F.source, F.target
            kw, ky = W.kview(), Y.kview()
            n += len(impl.nat_trans_search(
                W.n_obj, kw["dom"], kw["cod"], kw["nonid"],
                array("i", F.omap), array("i", F.mmap), array("i", G.omap), array("i", G.mmap),
                Y.n_obj, Y.n_mor, ky["comp"], ky["hom_start"], ky["hom_len"], ky["hom_items"], LIMIT,
            ))
        return n

    return run


def assoc_job(impl, cats):
    views = [(array("i", c.kview()["comp"]), c.n_mor) for c in cats]

    def run():
        return [impl.associativity_violation(comp, m) for comp, m in views]

    return run


def workloads():
    X3, D = fx.x3(), fx.diamond()
    big = product_category(D, fx.arrow())
    rng = random.Random(0)
    cats = [fx.random_category(rng, f"R{i}") for i in range(40)] + [big, fx.cyclic_group(6)]
    fs = enumerate_functors(fx.span(), big)
    pairs = [(F, G) for F in fs[:25] for G in fs[:25]]
    return [
        ("functors Span -> Diamond x Two", lambda impl: functor_job(impl, fx.span(), big)),
        ("functors Diamond -> X3 x X3", lambda impl: functor_job(impl, D, product_category(X3, X3))),
        ("nat. transformations, 625 pairs", lambda impl: nat_job(impl, pairs)),
        ("associativity scan, 42 categories", lambda impl: assoc_job(impl, cats)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    impls = {"python": _kernels_py}
    if "cython" in kernels.available_backends():
        from laxcat import _kernels_c

        impls["cython"] = _kernels_c
    print(f"{'workload':38} " + " ".join(f"{k:>12}" for k in impls) + "   speedup")
    for title, make in workloads():
        times = {}
        results = set()
        for name, impl in impls.items():
            job = make(impl)
            results.add(repr(job()))
            times[name] = min(timeit.repeat(job, number=1, repeat=args.repeat))
        assert len(results) == 1, f"backends disagree on {title}"
        speed = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else "       -"
        print(f"{title:38} " + " ".join(f"{t * 1e3:10.2f}ms" for t in times.values()) + f" {speed}")


if __name__ == "__main__":
    main()
