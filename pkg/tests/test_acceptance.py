"""Acceptance criteria, one test each, with the stated runtime limits."""

import subprocess
import sys
import time
from fractions import Fraction as F
from pathlib import Path

import pytest

from cellassoc import cli
from cellassoc.closed_form import gamma_d
from cellassoc.model import NetworkConfig
from cellassoc.oracle import oracle_eta, verify_witness_lemmas
from cellassoc.schemes import (
    build_downlink_scheme,
    build_joint_scheme,
    build_scheme,
    build_uplink_scheme,
    evaluate_scheme,
)
from cellassoc.zf import check_downlink

TESTS = Path(__file__).parent


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


@pytest.mark.parametrize("L,Nc", [(1, 1), (2, 1), (2, 2), (3, 3)])
def test_01_downlink_formula(acceptance, L, Nc):
    K = 3 * (2 * Nc + L)
    with Timer() as t:
        out = build_downlink_scheme(NetworkConfig(K, L, Nc))
        eta = check_downlink(out.cfg, out.assoc, out.downlink).eta
    ok = eta == 6 * Nc
    assert acceptance(1, ok, f"L={L} Nc={Nc} K={K} downlink eta={eta} (want {6 * Nc})", t.elapsed, 1)


def test_02_uplink_full(acceptance):
    with Timer() as t:
        ev = evaluate_scheme(build_uplink_scheme(NetworkConfig(20, 2, 3)))
    ok = ev.eta == 20 and ev.decode_depth == 20
    assert acceptance(2, ok, f"L=2 Nc=3 K=20 eta_UL={ev.eta} depth={ev.decode_depth}", t.elapsed, 1)


@pytest.mark.parametrize("L,Nc,K,want", [(4, 2, 30, 15), (2, 1, 24, 12)])
def test_03_uplink_block(acceptance, L, Nc, K, want):
    with Timer() as t:
        eta = evaluate_scheme(build_uplink_scheme(NetworkConfig(K, L, Nc))).eta
    assert acceptance(3, eta == want, f"L={L} Nc={Nc} K={K} eta_UL={eta} (want {want})", t.elapsed, 1)


def test_04_uplink_split(acceptance):
    with Timer() as t:
        eta = evaluate_scheme(build_uplink_scheme(NetworkConfig(21, 5, 1))).eta
    assert acceptance(4, eta == 6, f"L=5 Nc=1 K=21 eta_UL={eta} (want 6)", t.elapsed, 1)


@pytest.mark.parametrize("L,Nc,K,dl,ul", [(5, 7, 7, 4, 7), (4, 6, 6, 4, 6)])
def test_05_joint_examples(acceptance, L, Nc, K, dl, ul):
    with Timer() as t:
        ev = evaluate_scheme(build_joint_scheme(NetworkConfig(K, L, Nc)))
    ok = (ev.downlink.eta, ev.uplink.eta) == (dl, ul) and ev.pudof == F(dl + ul, 2 * K)
    detail = f"L={L} Nc={Nc} K={K} eta_DL={ev.downlink.eta} eta_UL={ev.uplink.eta} avg puDoF={ev.pudof}"
    assert acceptance(5, ok, detail, t.elapsed, 1)


def test_06_dominance_and_lemmas(acceptance):
    failures = []
    checked = 0
    with Timer() as t:
        for mode in ("up", "down"):
            for L in (1, 2):
                for Nc in (1, 2):
                    for K in range(1, 9):
                        cfg = NetworkConfig(K, L, Nc)
                        res = oracle_eta(cfg, mode)
                        scheme = evaluate_scheme(build_scheme(cfg, mode)).eta
                        if res.eta < scheme:
                            failures.append((mode, K, L, Nc, "dominance"))
                        if mode == "up" and verify_witness_lemmas(res) is not None:
                            failures.append((mode, K, L, Nc, "lemmas"))
                        checked += 1
    detail = f"{checked} configs, failures={failures[:3]}"
    assert acceptance(6, not failures, detail, t.elapsed, 300)


def test_07_oracle_increments(acceptance):
    with Timer() as t:
        d22 = oracle_eta(NetworkConfig(8, 2, 2), "up").eta - oracle_eta(NetworkConfig(4, 2, 2), "up").eta
        d21 = oracle_eta(NetworkConfig(8, 2, 1), "up").eta - oracle_eta(NetworkConfig(4, 2, 1), "up").eta
    ok = (d22, d21) == (3, 2)
    assert acceptance(7, ok, f"L=2 Nc=2 increment {d22} (want 3); L=2 Nc=1 increment {d21} (want 2)", t.elapsed, 300)


def test_08_numeric_cross_validation(acceptance, capsys):
    with Timer() as t:
        code = cli.main(["verify", "--K", "6", "--L", "2", "--Nc", "2", "--mode", "joint", "--trials", "100", "--seed", "7"])
    out = capsys.readouterr().out
    fractions = [float(line.split("agreement ")[1].split()[0]) for line in out.splitlines() if ":" in line]
    ok = code == 0 and len(fractions) == 2 and min(fractions) >= 0.99
    assert acceptance(8, ok, f"K=6 L=2 Nc=2 per-session agreement {fractions}, exit {code}", t.elapsed, 30)


def test_09_gamma_identity(acceptance):
    bad = []
    with Timer() as t:
        for L in range(1, 21):
            for Nc in range(L + 1, 2 * L):
                if gamma_d(L, Nc) != F(Nc - (L + 1) // 2, Nc):
                    bad.append((L, Nc))
    assert acceptance(9, not bad, f"all L in [1,20], L+1 <= Nc < 2L; mismatches {bad}", t.elapsed, 1)


def test_10_property_suites_headless(acceptance):
    selection = "lemma or monotone or prefix or golden or roundtrip"
    with Timer() as t:
        proc = subprocess.run(
            [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", "-k", selection,
             str(TESTS / "test_zf.py"), str(TESTS / "test_oracle.py"), str(TESTS / "test_cli.py")],
            capture_output=True, text=True, cwd=TESTS.parent,
        )
    summary = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    assert acceptance(10, proc.returncode == 0, f"property and golden tests: {summary}", t.elapsed, 300)
