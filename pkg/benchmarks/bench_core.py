"""Compare the compiled and pure-Python kernels.

Run with ``python benchmarks/bench_core.py [--repeat N]``.
"""

import argparse
import random
import timeit

from surfkernel import GeneratingVector, OrbifoldSignature, core, homology_matrices, make_symmetric
from surfkernel.schreier import pipeline


def s3_case():
    grp = make_symmetric(3)
    sig = OrbifoldSignature(0, (2, 2, 2, 2, 2, 2, 3, 3))
    return grp, sig, GeneratingVector((), (), (1, 1, 2, 2, 3, 3, 4, 5))


def kernels(grp):
    rng = random.Random(0)
    words = [tuple(rng.choice((1, -1)) * rng.randint(1, 8) for _ in range(200)) for _ in range(50)]
    images = tuple(rng.randrange(grp.order) for _ in range(8))
    subs = {g: words[g][:10] for g in range(3)}

    def run():
        table, inv = core.group_tables(grp)
        for w in words:
            core.free_reduce(w)
            core.cyclic_reduce(w)
            core.substitute(w, subs)
            core.evaluate(w, images, table, inv)
            core.rewrite(w, images, table, inv, 8)
            core.abelianize(w, 8)
    return run


def full_pipeline(grp, sig, phi):
    def run():
        _, simple = pipeline(sig, grp, phi)
        homology_matrices(simple)
    return run


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeat", type=int, default=20)
    args = parser.parse_args()
    grp, sig, phi = s3_case()
    results = {}
    for backend in core.available_backends():
        core.set_backend(backend)
        for label, fn in (("kernels", kernels(grp)), ("S3 pipeline", full_pipeline(grp, sig, phi))):
            best = min(timeit.repeat(fn, number=1, repeat=args.repeat))
            results[(label, backend)] = best
            print(f"{label:12s} {backend:7s} {best * 1000:8.2f} ms")
    if "cython" in core.available_backends():
        for label in ("kernels", "S3 pipeline"):
            ratio = results[(label, "python")] / results[(label, "cython")]
            print(f"{label:12s} speedup {ratio:6.2f}x")
    else:
        print("compiled extension not built; only the Python backend was timed")


if __name__ == "__main__":
    main()
