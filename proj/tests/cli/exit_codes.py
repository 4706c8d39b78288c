"""Exit codes of the cpo command line tool.

usage: exit_codes.py CPO DATA_DIR
"""

import pathlib
import shutil
import subprocess
import sys
import tempfile


def main():
    cpo, data = sys.argv[1], pathlib.Path(sys.argv[2])
    tmp = pathlib.Path(tempfile.mkdtemp())
    broken = tmp / "broken.cpo"
    broken.write_text("sort o;\nfun a : o arity 0;\nrule a -> ;\n")
    untyped = tmp / "untyped.cpo"
    untyped.write_text("sorts o, p;\nfun a : o arity 0;\nfun f : p -> p arity 1;\nrule f(a) -> a;\n")

    d = lambda name: str(data / name)
    cases = [
        (["check", d("continuation.cpo")], 0),
        (["check", "--json", d("brouwer.cpo")], 0),
        (["check", d("tree_flatten.cpo")], 1),
        (["check", d("a_to_fa.cpo")], 1),
        (["check", "--max-depth", "1", d("brouwer.cpo")], 1),
        (["check", d("f_small.cpo")], 2),
        (["check", d("mixed_status.cpo")], 2),
        (["check", "--relax", "NoSuchFlag", d("continuation.cpo")], 2),
        (["check", str(broken)], 3),
        (["check", str(untyped)], 3),
        (["check", str(tmp / "missing.cpo")], 3),
        (["check", "--relax", "FbSub-addX", d("tight/FbSub-addX.cpo")], 0),
        (["check", d("tight/FbSub-addX.cpo")], 1),
        (["validate", d("list_arith.cpo")], 0),
        (["validate", d("acc_negative.cpo")], 2),
        (["validate", "--json", d("lex_arity1.cpo")], 2),
        (["classify", d("tree_flatten.cpo")], 0),
        (["search", d("continuation_open.cpo")], 0),
        (["search", d("a_to_fa.cpo")], 1),
        (["search", "--max-free", "1", d("continuation_open.cpo")], 1),
    ]
    failures = 0
    for args, want in cases:
        run = subprocess.run([cpo] + args, capture_output=True, text=True)
        status = "ok" if run.returncode == want else "FAIL"
        failures += run.returncode != want
        print(f"{status}: cpo {' '.join(args)} -> {run.returncode} (want {want})")

    # Usage errors come from the argument parser and are never 0-3.
    run = subprocess.run([cpo, "check", "--mode", "bogus", d("continuation.cpo")], capture_output=True, text=True)
    usage_ok = run.returncode > 3
    failures += not usage_ok
    print(f"{'ok' if usage_ok else 'FAIL'}: usage error -> {run.returncode}")
    shutil.rmtree(tmp)
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
