"""Command-line surface: key lifecycle, hybrid file encryption, assumption
checks and benchmarks.

Exit codes: 0 success, 2 usage, 3 I/O, 4 structural (bad files, depth or
prefix violations, failed checks), 5 authentication failure on decrypt.
"""

from __future__ import annotations

import argparse
import random
import secrets
import sys

from .backend import BackendError, suite_concrete, suite_mock
from . import bench, costs, ggm, hybrid, scheme, wire
from .identity import IdentityError, parse_path, hash_identity

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_STRUCTURAL = 4
EXIT_AUTH = 5


def _int(text):
    # accepts decimal and 0x/0o/0b prefixed values
    return int(text, 0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ahibe",
        description="Anonymous hierarchical identity-based encryption tool",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("setup", help="generate master key and public parameters")
    p.add_argument("--depth", type=int, required=True, metavar="L")
    p.add_argument("--pp", required=True, help="output file for public parameters")
    p.add_argument("--mk", required=True, help="output file for the master key")
    p.add_argument("--curve", default="bls12-381")
    p.add_argument("--mock", type=_int, metavar="P",
                   help="use the mock backend over prime P (testing)")
    p.add_argument("--seed", type=int, help="deterministic randomness (testing)")

    p = sub.add_parser("keygen", help="derive a private key from the master key")
    p.add_argument("--id", required=True, help="identity path, e.g. corp/eng/alice")
    p.add_argument("--mk", required=True)
    p.add_argument("--pp", required=True)
    p.add_argument("--sk", required=True, help="output file for the private key")
    p.add_argument("--seed", type=int)

    p = sub.add_parser("delegate", help="extend a private key by one level")
    p.add_argument("--id", required=True, help="full child identity path")
    p.add_argument("--sk", required=True, help="parent private key file")
    p.add_argument("--pp", required=True)
    p.add_argument("--out", required=True, help="output file for the child key")
    p.add_argument("--seed", type=int)

    p = sub.add_parser("encrypt", help="encrypt a file to an identity")
    p.add_argument("--id", required=True)
    p.add_argument("--pp", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("decrypt", help="decrypt a file with a private key")
    p.add_argument("--sk", required=True)
    p.add_argument("--pp", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("bench", help="wall-clock benchmarks (concrete backend)")
    p.add_argument("--alg", required=True,
                   choices=["setup", "keygen", "delegate", "encrypt", "decrypt",
                            "preprocess"])
    p.add_argument("--depth", type=int, default=30, metavar="L")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify-counts",
                       help="check instrumented operation counts against the model")
    p.add_argument("--alg", required=True, choices=list(costs.ALGORITHMS))
    p.add_argument("--depth", type=int, required=True, metavar="L")
    p.add_argument("--d", type=int, required=True, help="identity depth")
    p.add_argument("--mock", type=int, default=1009, metavar="P")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("ggm-check", help="generic-group analysis of an assumption")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--builtin", type=int, metavar="N", help="1..5")
    group.add_argument("--instance", help="file with a custom instance")
    p.add_argument("--q", type=_int, help="instruction budget for a numeric bound")
    p.add_argument("--p", type=_int, help="group order for a numeric bound")
    return parser


def _rng(args):
    if getattr(args, "seed", None) is not None:
        return random.Random(args.seed)
    return secrets.SystemRandom()


def _read(path):
    with open(path, "rb") as handle:
        return handle.read()


def _write(path, data):
    with open(path, "wb") as handle:
        handle.write(data)


def _load_params(args):
    return wire.load_public_params(_read(args.pp))


def _check_same_deployment(a_suite, a_l, b_suite, b_l, what):
    if a_suite.backend != b_suite.backend or a_l != b_l:
        raise wire.WireError(f"{what} do not belong to the same deployment")
    if a_suite.backend == "mock" and a_suite.p != b_suite.p:
        raise wire.WireError(f"{what} use different mock group orders")


def cmd_setup(args):
    if args.depth < 1:
        raise scheme.SchemeError("depth must be at least 1")
    if args.mock is not None:
        suite = suite_mock(args.mock, args.seed if args.seed is not None else 0)
    else:
        suite = suite_concrete(args.curve)
    mk, pp, _ = scheme.setup(suite, args.depth, _rng(args))
    _write(args.mk, wire.dump_master_key(mk))
    _write(args.pp, wire.dump_public_params(pp))
    print(f"wrote {args.mk} and {args.pp} (backend {suite.backend}, depth {args.depth})")
    return EXIT_OK


def cmd_keygen(args):
    pp = _load_params(args)
    mk = wire.load_master_key(_read(args.mk))
    _check_same_deployment(mk.suite, mk.l, pp.suite, pp.l, "master key and parameters")
    ident = hash_identity(parse_path(args.id), pp.suite.p)
    sk = scheme.keygen(ident, mk, pp, _rng(args))
    _write(args.sk, wire.dump_private_key(sk))
    print(f"wrote {args.sk} (depth {len(ident)})")
    return EXIT_OK


def cmd_delegate(args):
    pp = _load_params(args)
    sk = wire.load_private_key(_read(args.sk))
    _check_same_deployment(sk.suite, sk.l, pp.suite, pp.l, "key and parameters")
    ident = hash_identity(parse_path(args.id), pp.suite.p)
    child = scheme.delegate(ident, sk, pp, _rng(args))
    _write(args.out, wire.dump_private_key(child))
    print(f"wrote {args.out} (depth {len(ident)})")
    return EXIT_OK


def cmd_encrypt(args):
    pp = _load_params(args)
    ident = hash_identity(parse_path(args.id), pp.suite.p)
    blob = hybrid.encrypt_bytes(ident, _read(args.infile), pp, _rng(args))
    _write(args.out, blob)
    print(f"wrote {args.out} ({len(blob)} bytes)")
    return EXIT_OK


def cmd_decrypt(args):
    pp = _load_params(args)
    sk = wire.load_private_key(_read(args.sk))
    _check_same_deployment(sk.suite, sk.l, pp.suite, pp.l, "key and parameters")
    plaintext = hybrid.decrypt_bytes(_read(args.infile), sk, pp)
    _write(args.out, plaintext)
    print(f"wrote {args.out} ({len(plaintext)} bytes)")
    return EXIT_OK


def cmd_bench(args):
    suite = suite_concrete()
    if args.alg == "preprocess":
        normal, prepared, factor, prep = bench.preprocess_speedup(
            suite, args.depth, max(1, args.depth // 2), reps=args.reps,
            seed=args.seed,
        )
        print(
            f"keygen normal {normal / 1e6:.2f} ms, with fixed-base tables "
            f"{prepared / 1e6:.2f} ms: speedup {factor:.2f}x "
            f"(one-time preparation {prep / 1e9:.2f} s)"
        )
        return EXIT_OK
    report = bench.run_bench(args.alg, suite, args.depth, reps=args.reps,
                             seed=args.seed)
    if args.csv:
        for line in report.csv_lines():
            print(line)
    else:
        print(report.summary())
    return EXIT_OK


def cmd_verify_counts(args):
    suite = suite_mock(args.mock, 0)
    ok = costs.verify_counts(args.alg, args.depth, args.d, suite, seed=args.seed)
    predicted = costs.predicted_counts(args.alg, args.depth, args.d)
    print(f"predicted: {dict(predicted)}")
    print(f"match: {'yes' if ok else 'NO'}")
    return EXIT_OK if ok else EXIT_STRUCTURAL


def cmd_ggm_check(args):
    if args.builtin is not None:
        inst = ggm.builtin_assumption(args.builtin)
    else:
        inst = ggm.parse_instance(
            _read(args.instance).decode(), name=args.instance
        )
    verdict = ggm.check_assumption(inst)
    print(f"instance: {verdict.name} (challenge in {inst.challenge})")
    yn = lambda flag: "yes" if flag else "no"
    print(f"challenge dependent on own group (T0/T1): "
          f"{yn(verdict.t_dependent_on_p[0])}/{yn(verdict.t_dependent_on_p[1])}")
    print(f"pairing-level dependent (T0/T1): "
          f"{yn(verdict.pairing_dependent[0])}/{yn(verdict.pairing_dependent[1])}")
    print(f"generic-secure: {yn(verdict.generic_secure)}, bound {verdict.bound}")
    if args.q is not None and args.p is not None:
        value = verdict.bound_value(args.q, args.p)
        print(f"bound at q={args.q}, p={args.p}: {value} ~= {float(value):.3e}")
    return EXIT_OK if verdict.generic_secure else EXIT_STRUCTURAL


_HANDLERS = {
    "setup": cmd_setup,
    "keygen": cmd_keygen,
    "delegate": cmd_delegate,
    "encrypt": cmd_encrypt,
    "decrypt": cmd_decrypt,
    "bench": cmd_bench,
    "verify-counts": cmd_verify_counts,
    "ggm-check": cmd_ggm_check,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except IdentityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except hybrid.AuthenticationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_AUTH
    except (
        wire.WireError,
        scheme.SchemeError,
        BackendError,
        ggm.GgmError,
        hybrid.HybridError,
        costs.CostError,
        bench.BenchError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL


if __name__ == "__main__":
    sys.exit(main())
