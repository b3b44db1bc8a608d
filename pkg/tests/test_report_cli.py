import csv
import io
import json

import numpy as np
import pytest

from absep import chull, cli, report
from absep.report import Aggregate, build_report
from absep.spectra import Bipartite, Multiqudit, SymmetricMultiqudit, mms, validate_spectrum


class TestBuildReport:
    def test_mms_bipartite(self):
        rep = build_report(mms(4), Bipartite(2, 2))
        assert rep.aggregate == Aggregate.AS_CERTIFIED
        assert rep.hull_certificate is None  # closed forms already fire

    def test_npt_spectrum(self):
        s = validate_spectrum([1 / 7, 1 / 7, 1 / 7, 4 / 7])
        rep = build_report(s, Bipartite(2, 2))
        assert rep.aggregate == Aggregate.NOT_AP

    def test_boundary_spectrum_certified(self):
        # exactly on the hull facet 3 l0 + 3 l1 >= 1 and on the ball sphere
        s = validate_spectrum([1 / 6, 1 / 6, 1 / 6, 1 / 2])
        rep = build_report(s, Bipartite(2, 2))
        assert rep.aggregate == Aggregate.AS_CERTIFIED

    def test_inconclusive(self):
        # passes the AP-necessary block but escapes every sufficient criterion
        s = validate_spectrum([0.042, 0.2, 0.33, 0.428])
        rep = build_report(s, Bipartite(2, 2))
        assert rep.aggregate == Aggregate.INCONCLUSIVE

    def test_facet_member_skips_hull(self):
        mid = np.array([1 / 12, 1 / 4, 1 / 4, 5 / 12])
        rep = build_report(validate_spectrum(0.9 * mid + 0.1 / 4), Bipartite(2, 2))
        assert rep.aggregate == Aggregate.AS_CERTIFIED
        assert rep.hull_certificate is None  # the facet already covers hull points

    def test_hull_only_point(self):
        # ball/simplex mixture that escapes every closed-form criterion
        lam = np.array(
            [0.078475, 0.08263, 0.094781, 0.095202, 0.096939, 0.103826, 0.106303, 0.109868, 0.231976]
        )
        s = validate_spectrum(lam / lam.sum())
        rep = build_report(s, Bipartite(3, 3))
        assert rep.aggregate == Aggregate.AS_CERTIFIED
        assert isinstance(rep.hull_certificate, chull.DecompositionCertificate)

    def test_multiqudit_full_separability(self):
        rep = build_report(mms(8), Multiqudit(2, 3))
        assert rep.aggregate == Aggregate.FULLY_SEP_CERTIFIED

    def test_symmetric_sas(self):
        rep = build_report(mms(4), SymmetricMultiqudit(2, 3))
        assert rep.aggregate == Aggregate.AS_CERTIFIED

    def test_symmetric_sap(self):
        rep = build_report(mms(6), SymmetricMultiqudit(3, 2))
        assert rep.aggregate == Aggregate.SAP_CERTIFIED

    def test_provenance_notes_surface(self):
        rep = build_report(mms(4), SymmetricMultiqudit(2, 3))
        assert any("NumericalEvidence" in n for n in rep.provenance_notes)

    def test_to_dict_is_json_serializable(self):
        rep = build_report(mms(4), Bipartite(2, 2))
        json.dumps(rep.to_dict())


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def spectrum_file(tmp_path):
    def make(values, dims=None, name="s.json"):
        path = tmp_path / name
        obj = {"eigenvalues": list(values)}
        if dims is not None:
            obj["dims"] = dims
        path.write_text(json.dumps(obj))
        return str(path)

    return make


class TestCli:
    def test_check_json(self, capsys, spectrum_file):
        path = spectrum_file([0.25] * 4, {"type": "bipartite", "n": 2, "m": 2})
        code, out, _ = run_cli(capsys, "--format", "json", "check", path)
        assert code == 0
        payload = json.loads(out)
        assert payload["aggregate"] == "AS_CERTIFIED"

    def test_check_text_aggregate_line(self, capsys, spectrum_file):
        path = spectrum_file([1 / 7, 1 / 7, 1 / 7, 4 / 7], {"type": "bipartite", "n": 2, "m": 2})
        code, out, _ = run_cli(capsys, "check", path)
        assert code == 0
        assert "aggregate: NOT_AP" in out

    def test_flags_after_subcommand(self, capsys, spectrum_file):
        path = spectrum_file([0.25] * 4, {"type": "bipartite", "n": 2, "m": 2})
        code, out, _ = run_cli(capsys, "check", path, "--format", "json")
        assert code == 0
        json.loads(out)

    def test_missing_file_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "check", "/nonexistent.json", "--bipartite", "2", "2")
        assert code == 2
        assert "error" in err

    def test_missing_dims_exit_2(self, capsys, spectrum_file):
        path = spectrum_file([0.25] * 4)
        code, _, err = run_cli(capsys, "check", path)
        assert code == 2

    def test_bad_trace_exit_2(self, capsys, spectrum_file):
        path = spectrum_file([0.5] * 4, {"type": "bipartite", "n": 2, "m": 2})
        code, _, _ = run_cli(capsys, "check", path)
        assert code == 2

    def test_bounds(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json", "bounds", "--symmetric", "2", "3")
        assert code == 0
        payload = json.loads(out)
        assert payload["min_eig_threshold"] == pytest.approx(3 / 14)
        assert payload["minus_provenance"] == "NumericalEvidence"

    def test_facets_brute(self, capsys):
        code, out, _ = run_cli(capsys, "--format", "json", "facets", "--dim", "3", "--brute")
        payload = json.loads(out)
        assert code == 0
        assert len(payload["facets"]) == 6

    def test_facets_sector_with_window(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "--format",
            "json",
            "facets",
            "--dim",
            "3",
            "--alpha-minus=-3/4",
            "--alpha-plus=1",
        )
        payload = json.loads(out)
        assert payload["facets"][0]["normal"] == [7, 5, 0]

    def test_solve_feasible(self, capsys, spectrum_file):
        path = spectrum_file([0.25] * 4, {"type": "bipartite", "n": 2, "m": 2})
        code, out, _ = run_cli(capsys, "--format", "json", "solve", path)
        assert code == 0
        payload = json.loads(out)
        assert payload["feasible"] and payload["verified"]

    def test_falsify_witness(self, capsys, spectrum_file):
        path = spectrum_file([1 / 7, 1 / 7, 1 / 7, 4 / 7], {"type": "bipartite", "n": 2, "m": 2})
        code, out, _ = run_cli(
            capsys, "--format", "json", "falsify", path, "--samples", "5000"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["witness_found"] and payload["witness_reproduced"]

    def test_sym_check(self, capsys, spectrum_file):
        path = spectrum_file([0.25] * 4, {"type": "symmetric", "d": 2, "n": 3})
        code, out, _ = run_cli(capsys, "--format", "json", "sym-check", path)
        assert code == 0
        payload = json.loads(out)
        assert payload["embedded_min_pt_eig_by_k"]["1"] >= -1e-10

    def test_scan_csv(self, capsys, tmp_path):
        out_path = tmp_path / "scan.csv"
        code, _, _ = run_cli(
            capsys,
            "scan",
            "--bipartite",
            "2",
            "2",
            "--samples",
            "50",
            "--seed",
            "3",
            "--out",
            str(out_path),
        )
        assert code == 0
        rows = list(csv.reader(out_path.open()))
        assert rows[0] == ["purity", "lambda_min", "class"]
        assert len(rows) == 51

    def test_scan_grid_resolution(self, capsys, tmp_path):
        out_path = tmp_path / "scan.csv"
        code, _, _ = run_cli(
            capsys,
            "scan",
            "--bipartite",
            "2",
            "2",
            "--samples",
            "100",
            "--resolution",
            "8",
            "--out",
            str(out_path),
        )
        assert code == 0
        rows = list(csv.reader(out_path.open()))
        assert 1 < len(rows) <= 65
