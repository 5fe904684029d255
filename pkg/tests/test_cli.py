import os

import pytest

from sigtime.cli import main

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "golden")

# every golden file regenerates byte for byte from its recorded argv;
# OUT marks where the output path goes
GOLDENS = [
    ("count_n12.csv", "--csv", ["count", "--n-max", "12"]),
    (
        "concat_metrics_L6_max48.csv",
        "--csv",
        ["concat", "metrics", "--L", "6", "--len-max", "48"],
    ),
    (
        "relay_sweep_coarse.csv",
        "--csv",
        [
            "relay",
            "sweep",
            "--kappa",
            "0.35,0.75",
            "--a",
            "2",
            "--ntr",
            "6",
            "--p-db",
            "5:45:10",
        ],
    ),
    (
        "simulate_6slots.csv",
        "--csv",
        [
            "codebook",
            "simulate",
            "--word",
            "110100",
            "--c1",
            "3",
            "--c2",
            "2",
            "--T",
            "5",
        ],
    ),
    ("book_n4.txt", "--out", ["codebook", "build", "--n", "4"]),
]


@pytest.mark.parametrize("name,flag,argv", GOLDENS, ids=[g[0] for g in GOLDENS])
def test_golden_files_regenerate(tmp_path, name, flag, argv):
    out = tmp_path / name
    assert main(argv + [flag, str(out)]) == 0
    with open(os.path.join(GOLDEN_DIR, name), "rb") as fh:
        expected = fh.read()
    assert out.read_bytes() == expected


def test_same_argv_same_bytes(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    argv = ["relay", "sweep", "--kappa", "0.4", "--a", "1.7", "--ntr", "6", "--p-db", "3,30"]
    assert main(argv + ["--csv", str(a)]) == 0
    assert main(argv + ["--csv", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_count_stdout_table(capsys):
    assert main(["count", "--n-max", "3"]) == 0
    out = capsys.readouterr().out
    assert out == (
        "n,S_n,log2_Sn,bits_per_pulse\r\n"
        "1,1,0,0\r\n"
        "2,2,1,0.25\r\n"
        "3,5,2.32192809489,0.386988015815\r\n"
    )


def test_single_value_subcommands(capsys):
    assert main(["codebook", "rank", "--word", "110100"]) == 0
    assert capsys.readouterr().out == "1\n"
    assert main(["codebook", "unrank", "--n", "3", "--index", "1"]) == 0
    assert capsys.readouterr().out == "110100\n"
    assert main(["concat", "encode", "--len", "8", "--L", "4", "--index", "0"]) == 0
    assert capsys.readouterr().out == "11001100\n"
    assert main(["concat", "decode", "--len", "8", "--L", "4", "--word", "10101010"]) == 0
    assert capsys.readouterr().out == "3\n"


def test_build_word_listing(capsys):
    assert main(["codebook", "build", "--n", "2"]) == 0
    assert capsys.readouterr().out == "1100\n1010\n"


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--n-max", "0"],
        ["count", "--no-such-flag"],
        ["codebook", "rank", "--word", "1001"],
        ["codebook", "rank", "--word", "10a0"],
        ["codebook", "build", "--n", "17"],
        ["codebook", "unrank", "--n", "3", "--index", "5"],
        ["codebook", "simulate", "--word", "10", "--c1", "0", "--c2", "1", "--T", "1"],
        ["concat", "metrics", "--L", "5", "--len-max", "20"],
        ["concat", "encode", "--len", "8", "--L", "4", "--index", "196"],
        ["concat", "decode", "--len", "8", "--L", "4", "--word", "10011100"],
        ["relay", "sweep", "--p-db", "50:1:0.5"],
        ["relay", "sweep", "--kappa", "zero"],
        ["relay", "sweep", "--geometry", "sideways"],
    ],
)
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_config_file_precedence(tmp_path, capsys):
    cfg = tmp_path / "scenario.cfg"
    cfg.write_text("# comment\nkappa=0.9\nd=20\nntr=12\n")
    assert main(["relay", "sweep", "--config", str(cfg), "--p-db", "10", "--a", "2"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[1].split(",")[2] == "0.9"  # kappa from config
    assert rows[1].split(",")[4] == "12"  # ntr from config
    # flags beat config
    assert (
        main(
            [
                "relay",
                "sweep",
                "--config",
                str(cfg),
                "--p-db",
                "10",
                "--a",
                "2",
                "--kappa",
                "0.5",
            ]
        )
        == 0
    )
    rows = capsys.readouterr().out.splitlines()
    assert rows[1].split(",")[2] == "0.5"


def test_config_rejects_unknown_key(tmp_path):
    cfg = tmp_path / "scenario.cfg"
    cfg.write_text("bogus=1\n")
    with pytest.raises(SystemExit) as exc:
        main(["relay", "sweep", "--config", str(cfg)])
    assert exc.value.code == 2


def test_seedless_flag_is_accepted(capsys):
    assert main(["count", "--n-max", "1", "--seedless"]) == 0
    assert capsys.readouterr().out.startswith("n,S_n")
