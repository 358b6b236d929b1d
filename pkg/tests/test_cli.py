import json
import socket
import subprocess
import sys
import time
import urllib.request
import xml.etree.ElementTree as ET

import pytest
from fastapi.testclient import TestClient

from quakestream.cli import main
from quakestream.service import create_app, load_engine


@pytest.fixture()
def run_cli(capsys):
    def run(*argv):
        try:
            code = main(list(argv))
        except SystemExit as exc:  # argparse errors
            code = exc.code
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run


# --- validate -----------------------------------------------------------------


def test_validate_reports_counts(run_cli, scenario_path):
    code, out, err = run_cli("validate", "--corpus", scenario_path)
    assert code == 0
    report = json.loads(out)
    assert report["messages"] == 55
    assert report["skipped_rows"] == 0
    assert report["label_coverage"]["transportation"] >= 25
    assert report["distinct_accounts"] == 14
    assert report["distinct_locations"] == 12
    assert report["unclassified"] >= 1


def test_validate_missing_file_names_path(run_cli):
    code, out, err = run_cli("validate", "--corpus", "/no/such/file.csv")
    assert code == 2
    assert "/no/such/file.csv" in err


def test_validate_duplicate_subcategory_names_it(run_cli, scenario_path, tmp_path):
    config = tmp_path / "tax.json"
    config.write_text(
        json.dumps(
            {
                "categories": [
                    {"name": "event", "subcategories": [{"name": "water", "keywords": ["flood"]}]},
                    {"name": "resource", "subcategories": [{"name": "water", "keywords": ["water"]}]},
                ]
            }
        )
    )
    code, out, err = run_cli("validate", "--corpus", scenario_path, "--taxonomy", str(config))
    assert code == 2
    assert "water" in err


# --- query --------------------------------------------------------------------


QUERY_CASES = [
    ("summary", {}),
    ("summary", {"--labels": "water,food", "--bin": "1800"}),
    ("geo", {}),
    ("ranking", {"--limit": "5"}),
    ("network", {}),
    ("wordstream", {"--boxes": "6", "--top-k": "10"}),
    ("messages", {"--account": "dot-sthimark", "--page-size": "10"}),
]


@pytest.mark.parametrize("endpoint,extra", QUERY_CASES)
def test_query_bytes_equal_http_body(endpoint, extra, scenario_path, capsysbinary):
    argv = [
        "query",
        endpoint,
        "--corpus",
        scenario_path,
        "--from",
        "2020-04-08T08:00:00Z",
        "--to",
        "2020-04-08T13:00:00Z",
    ]
    for flag, value in extra.items():
        argv.extend([flag, value])
    assert main(argv) == 0
    cli_bytes = capsysbinary.readouterr().out

    params = {"from": "2020-04-08T08:00:00Z", "to": "2020-04-08T13:00:00Z"}
    params.update({flag.lstrip("-").replace("-", "_"): v for flag, v in extra.items()})
    client = TestClient(create_app(load_engine(scenario_path)))
    http_bytes = client.get(f"/api/{endpoint}", params=params).content
    assert cli_bytes == http_bytes


def test_query_extent(run_cli, scenario_path):
    code, out, err = run_cli("query", "extent", "--corpus", scenario_path)
    assert code == 0
    assert json.loads(out)["message_count"] == 55


def test_query_bad_instant_exits_one(run_cli, scenario_path):
    code, out, err = run_cli(
        "query", "summary", "--corpus", scenario_path, "--from", "noon", "--to", "later"
    )
    assert code == 1
    assert "from" in err


def test_query_unknown_endpoint_is_usage_error(run_cli, scenario_path):
    code, out, err = run_cli("query", "bogus", "--corpus", scenario_path)
    assert code == 1


def test_query_corrupt_corpus_exits_two(run_cli, tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("zeit,ort,konto,text\n1,2,3,4\n")
    code, out, err = run_cli(
        "query",
        "extent",
        "--corpus",
        str(bad),
    )
    assert code == 2


# --- export -------------------------------------------------------------------


def test_export_writes_valid_deterministic_svg(run_cli, scenario_path, tmp_path):
    out_path = tmp_path / "stream.svg"
    argv = (
        "export",
        "--corpus",
        scenario_path,
        "--from",
        "2020-04-08T08:00:00Z",
        "--to",
        "2020-04-08T13:00:00Z",
        "--output",
        str(out_path),
    )
    code, _, _ = run_cli(*argv)
    assert code == 0
    first = out_path.read_bytes()
    root = ET.fromstring(first)
    assert root.tag.endswith("svg")
    word_rects = [
        el
        for el in root.iter("{http://www.w3.org/2000/svg}rect")
        if el.get("class") == "word-box"
    ]
    assert len(word_rects) > 50

    code, _, _ = run_cli(*argv)
    assert code == 0
    assert out_path.read_bytes() == first


def test_export_empty_window_has_no_words(run_cli, scenario_path, tmp_path):
    out_path = tmp_path / "empty.svg"
    code, _, _ = run_cli(
        "export",
        "--corpus",
        scenario_path,
        "--from",
        "2021-01-01T00:00:00Z",
        "--to",
        "2021-01-01T02:00:00Z",
        "--output",
        str(out_path),
    )
    assert code == 0
    root = ET.fromstring(out_path.read_bytes())
    assert list(root.iter("{http://www.w3.org/2000/svg}text")) == []


def test_export_unwritable_path_exits_two(run_cli, scenario_path):
    code, out, err = run_cli(
        "export",
        "--corpus",
        scenario_path,
        "--from",
        "2020-04-08T08:00:00Z",
        "--to",
        "2020-04-08T13:00:00Z",
        "--output",
        "/no/such/dir/file.svg",
    )
    assert code == 2


# --- serve --------------------------------------------------------------------


def _free_port() -> int:
    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        return probe.getsockname()[1]


def test_serve_answers_extent(scenario_path):
    port = _free_port()
    process = subprocess.Popen(
        [
            sys.executable,
            "-m",
            "quakestream.cli",
            "serve",
            "--corpus",
            scenario_path,
            "--port",
            str(port),
        ],
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
    )
    try:
        payload = None
        for _ in range(100):
            if process.poll() is not None:
                break
            try:
                with urllib.request.urlopen(
                    f"http://127.0.0.1:{port}/api/extent", timeout=1
                ) as response:
                    payload = json.loads(response.read())
                    break
            except OSError:
                time.sleep(0.1)
        assert payload is not None, process.stderr.read().decode()
        assert payload["message_count"] == 55
    finally:
        process.terminate()
        process.wait(timeout=10)


def test_serve_busy_port_exits_nonzero(scenario_path):
    blocker = socket.socket()
    blocker.bind(("127.0.0.1", 0))
    blocker.listen(1)
    port = blocker.getsockname()[1]
    try:
        result = subprocess.run(
            [
                sys.executable,
                "-m",
                "quakestream.cli",
                "serve",
                "--corpus",
                scenario_path,
                "--port",
                str(port),
            ],
            capture_output=True,
            timeout=30,
        )
        assert result.returncode == 2
        assert str(port) in result.stderr.decode()
    finally:
        blocker.close()


def test_serve_corrupt_corpus_exits_before_binding(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("time,location,account,message\n")  # zero records is fatal
    result = subprocess.run(
        [
            sys.executable,
            "-m",
            "quakestream.cli",
            "serve",
            "--corpus",
            str(bad),
            "--port",
            str(_free_port()),
        ],
        capture_output=True,
        timeout=30,
    )
    assert result.returncode == 2
    assert b"ready:" not in result.stderr
