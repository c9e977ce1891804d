import json
import os
import subprocess
import sys

from tlh.recursion import CACHE_HEADER


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env.pop("TLH_CACHE", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "tlh.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


class TestPoincare:
    def test_trefoil_text(self):
        r = run_cli("poincare", "2", "3", "1")
        assert r.returncode == 0
        assert r.stdout.strip() == "Q + A + T"

    def test_hopf_text(self):
        r = run_cli("poincare", "2", "2", "1")
        assert r.returncode == 0
        assert r.stdout.strip() == "(Q + A + T - Q*T) / (1-Q)^1"

    def test_raw_skips_normalization(self):
        raw = run_cli("--raw", "poincare", "2", "2", "1")
        assert raw.returncode == 0 and "Q^-1" in raw.stdout
        cooked = run_cli("poincare", "2", "2", "1")
        assert "Q^-1" not in cooked.stdout

    def test_q1_text(self):
        r = run_cli("poincare", "2", "3", "1", "--q1")
        assert r.returncode == 0
        assert r.stdout.strip() == "1 + A + T"

    def test_q1_squares(self):
        r = run_cli("poincare", "2", "3", "2", "--q1")
        assert r.stdout.strip() == "1 + 2*A + A^2 + 2*T + 2*A*T + T^2"

    def test_q1_rejects_links(self):
        r = run_cli("poincare", "2", "2", "1", "--q1")
        assert r.returncode == 2 and "error:" in r.stderr

    def test_json_envelope(self):
        r = run_cli("--format", "json", "poincare", "2", "3", "1")
        blob = json.loads(r.stdout)
        assert blob["m"] == 2 and blob["n"] == 3 and blob["k"] == 1
        assert blob["d"] == 1 and blob["reduced"] is True
        assert blob["dimension"] == "3"
        assert {t["a"] for t in blob["poincare"]["terms"]} == {0, 1}
        assert blob["poincare"]["den_q"] == 0

    def test_json_link_has_null_dimension(self):
        r = run_cli("--format", "json", "poincare", "2", "2", "1")
        blob = json.loads(r.stdout)
        assert blob["dimension"] is None
        assert blob["poincare"]["den_q"] == 1

    def test_unreduced_text(self):
        r = run_cli("poincare", "2", "3", "1", "--unreduced")
        lines = r.stdout.splitlines()
        assert lines[0] == "reduced: Q + A + T"
        assert lines[1] == "unknot-factor: (1 + A) / (1 - Q)"

    def test_unreduced_json(self):
        r = run_cli("--format", "json", "poincare", "2", "3", "2", "--unreduced")
        blob = json.loads(r.stdout)
        assert blob["reduced"] is False
        assert "unknot_factor" in blob
        assert {"num", "den"} <= set(blob["unknot_factor"])


class TestDim:
    def test_trefoil(self):
        r = run_cli("dim", "2", "3", "1")
        assert r.returncode == 0 and r.stdout.strip() == "3"

    def test_colored(self):
        r = run_cli("dim", "2", "3", "3")
        assert r.stdout.strip() == "27"

    def test_json(self):
        r = run_cli("--format", "json", "dim", "2", "5", "1")
        blob = json.loads(r.stdout)
        assert blob["dimension"] == "5" and blob["poincare"] is None

    def test_link_exits_2(self):
        r = run_cli("dim", "2", "2", "1")
        assert r.returncode == 2
        assert "infinite-dimensional (link)" in r.stderr


class TestChecks:
    def test_growth_pass(self):
        r = run_cli("growth-check", "2", "3", "3")
        assert r.returncode == 0
        assert "k=1: pass" in r.stdout and "all passed" in r.stdout

    def test_growth_gcd_exits_2(self):
        r = run_cli("growth-check", "2", "4", "2")
        assert r.returncode == 2 and "gcd" in r.stderr

    def test_growth_json(self):
        r = run_cli("--format", "json", "growth-check", "2", "5", "3")
        blob = json.loads(r.stdout)
        assert blob["pass"] is True and len(blob["results"]) == 3

    def test_colorshift_t2even(self):
        r = run_cli("colorshift-check", "t2even", "--n", "1", "--kmax", "4")
        assert r.returncode == 0 and "all passed" in r.stdout

    def test_colorshift_t33(self):
        r = run_cli("colorshift-check", "t33", "--kmax", "2")
        assert r.returncode == 0

    def test_colorshift_missing_n_exits_2(self):
        r = run_cli("colorshift-check", "t2even", "--kmax", "2")
        assert r.returncode == 2

    def test_workers_do_not_change_output(self):
        one = run_cli("--workers", "1", "colorshift-check", "t2even", "--n", "2", "--kmax", "3")
        three = run_cli("--workers", "3", "colorshift-check", "t2even", "--n", "2", "--kmax", "3")
        assert one.stdout == three.stdout and one.returncode == three.returncode


class TestCache:
    def test_round_trip(self, tmp_path):
        path = str(tmp_path / "memo.cache")
        cold = run_cli("--cache", path, "dim", "2", "5", "2")
        assert cold.returncode == 0
        assert open(path).readline().strip() == CACHE_HEADER
        warm = run_cli("--cache", path, "dim", "2", "5", "2")
        assert warm.stdout == cold.stdout
        assert "warning" not in warm.stderr

    def test_missing_file_warns_and_proceeds(self, tmp_path):
        path = str(tmp_path / "fresh.cache")
        r = run_cli("--cache", path, "poincare", "2", "3", "1")
        assert r.returncode == 0
        assert "not found; starting fresh" in r.stderr
        assert r.stdout.strip() == "Q + A + T"

    def test_unwritable_path_warns_and_proceeds(self, tmp_path):
        path = str(tmp_path / "no_such_dir" / "memo.cache")
        r = run_cli("--cache", path, "poincare", "2", "3", "1")
        assert r.returncode == 0
        assert "could not write cache" in r.stderr
        assert r.stdout.strip() == "Q + A + T"

    def test_corrupt_file_warns_and_proceeds(self, tmp_path):
        path = tmp_path / "broken.cache"
        path.write_text("TLH-CACHE 999\nnot a real line\n")
        r = run_cli("--cache", str(path), "poincare", "2", "3", "1")
        assert r.returncode == 0
        assert "ignoring cache" in r.stderr
        assert r.stdout.strip() == "Q + A + T"

    def test_env_var_default(self, tmp_path):
        path = str(tmp_path / "env.cache")
        r = run_cli("dim", "2", "3", "1", env_extra={"TLH_CACHE": path})
        assert r.returncode == 0 and os.path.exists(path)

    def test_cache_stats(self, tmp_path):
        path = str(tmp_path / "memo.cache")
        run_cli("--cache", path, "dim", "2", "3", "1")
        text = run_cli("--cache", path, "cache-stats")
        count = int(text.stdout.split(":")[1])
        assert count > 0
        blob = json.loads(
            run_cli("--format", "json", "--cache", path, "cache-stats").stdout
        )
        assert blob["entries"] == count

    def test_stats_flag_reports_to_stderr(self):
        r = run_cli("--stats", "dim", "2", "3", "1")
        assert r.returncode == 0 and "memo:" in r.stderr


class TestArgumentErrors:
    def test_zero_color_rejected(self):
        r = run_cli("poincare", "2", "3", "0")
        assert r.returncode == 2

    def test_negative_parameter_rejected(self):
        r = run_cli("dim", "-2", "3", "1")
        assert r.returncode == 2

    def test_unknown_command_rejected(self):
        r = run_cli("frobnicate")
        assert r.returncode == 2
