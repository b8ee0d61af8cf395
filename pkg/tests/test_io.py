import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wavekit import (DetectionConfig, InvalidSignalError, MexicanHat,
                     ScaleGrid, TimeSeries, barnsley_tree_model, chaos_game,
                     cwt_fft, detect_singularities, gen_chirp_jump,
                     modulus_maxima, scalogram, wavelet_autocovariance)
from wavekit.io import (RunManifest, _fnum, estimate_to_dict, points_to_image,
                        read_json, read_pgm, read_points_csv,
                        read_run_manifest, read_signal_csv, report_to_dict,
                        write_covariance_tsv, write_json, write_maxima_tsv,
                        write_pgm, write_points_csv, write_run_manifest,
                        write_scalogram_tsv, write_signal_csv)

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


# ------------------------------------------------------------ number format

@given(finite)
def test_seventeen_digits_round_trip_any_double(v):
    assert float(_fnum(v)) == v


# -------------------------------------------------------------- signal CSV

@settings(max_examples=40, deadline=None)
@given(st.lists(finite, min_size=2, max_size=64),
       st.floats(1e-6, 1e3),
       st.floats(-1e4, 1e4))
def test_signal_csv_round_trip(tmp_path_factory, values, dt, offset):
    path = str(tmp_path_factory.mktemp("sig") / "f.csv")
    f = TimeSeries(samples=np.asarray(values), dt=dt, t0=offset * dt)
    write_signal_csv(path, f)
    g = read_signal_csv(path)
    assert np.array_equal(g.samples, f.samples)
    assert g.t0 == f.t0
    assert g.dt == pytest.approx(f.dt, rel=1e-12)


def test_value_only_files_get_unit_spacing(tmp_path):
    p = tmp_path / "v.csv"
    p.write_text("# values\n\n1.5\n2.5\n-3.5\n")
    f = read_signal_csv(str(p))
    assert np.array_equal(f.samples, [1.5, 2.5, -3.5])
    assert f.dt == 1.0 and f.t0 == 0.0


def test_comments_and_blanks_are_skipped(tmp_path):
    p = tmp_path / "c.csv"
    p.write_text("# header\n0.0,1.0\n\n# midstream note\n0.5,2.0\n1.0,3.0\n")
    f = read_signal_csv(str(p))
    assert f.n == 3 and f.dt == pytest.approx(0.5)


@pytest.mark.parametrize("body, message", [
    ("", "no samples"),
    ("# only a comment\n", "no samples"),
    ("1.0,2.0\n", "need at least 2 samples"),
    ("1,2,3\n4,5,6\n", "expected 1 or 2 columns, got 3"),
    ("0.0,1.0\n0.5\n", ":2: inconsistent column count"),
    ("0.0,1.0\n0.5,oops\n", ":2: not numeric"),
    ("0.0,1.0\n-0.5,2.0\n", "time column must increase"),
    ("0.0,1.0\n0.1,2.0\n0.9,3.0\n1.0,4.0\n", "nonuniform spacing near data row"),
])
def test_signal_csv_rejects_malformed_input(tmp_path, body, message):
    p = tmp_path / "bad.csv"
    p.write_text(body)
    with pytest.raises(InvalidSignalError, match=message):
        read_signal_csv(str(p))


def test_parse_errors_name_the_file_and_line(tmp_path):
    p = tmp_path / "named.csv"
    p.write_text("# h\n0.0,1.0\nnope,2.0\n")
    with pytest.raises(InvalidSignalError, match=r"named\.csv:3: not numeric"):
        read_signal_csv(str(p))


# -------------------------------------------------------------- points CSV

def test_points_csv_round_trip(tmp_path):
    pts = chaos_game(barnsley_tree_model(), n=500, seed=4).points
    p = str(tmp_path / "pts.csv")
    write_points_csv(p, pts)
    assert np.array_equal(read_points_csv(p), pts)


@pytest.mark.parametrize("body, message", [
    ("", "no points"),
    ("1.0\n", "expected x,y"),
    ("1.0,2.0,3.0\n", "expected x,y"),
    ("1.0,zz\n", ":1: not numeric"),
])
def test_points_csv_rejects_malformed_input(tmp_path, body, message):
    p = tmp_path / "bad.csv"
    p.write_text(body)
    with pytest.raises(InvalidSignalError, match=message):
        read_points_csv(str(p))


# --------------------------------------------------------------- TSV dumps

@pytest.fixture(scope="module")
def small_transform():
    f = gen_chirp_jump(512)
    g = ScaleGrid.with_count(2.0 * f.dt, 20.0 * f.dt, 10)
    return cwt_fft(f, MexicanHat(), g)


def test_scalogram_tsv_is_loadable_and_exact(small_transform, tmp_path):
    s = scalogram(small_transform)
    p = str(tmp_path / "s.tsv")
    write_scalogram_tsv(p, s)
    rows = np.loadtxt(p)
    assert rows.shape == (s.scales.size * s.times.size, 3)
    assert np.array_equal(rows[:, 2], s.values.ravel())
    assert np.array_equal(rows[: s.times.size, 0], s.times)
    assert np.all(rows[: s.times.size, 1] == s.scales[0])


def test_maxima_tsv_matches_the_point_set(small_transform, tmp_path):
    m = modulus_maxima(small_transform)
    p = str(tmp_path / "m.tsv")
    write_maxima_tsv(p, m)
    rows = np.loadtxt(p, ndmin=2)
    assert rows.shape == (m.n_points, 3)
    assert np.array_equal(rows[:, 0], m.times[m.time_idx])
    assert np.array_equal(rows[:, 1], m.scales[m.scale_idx])
    assert np.array_equal(rows[:, 2], m.values)


def test_covariance_tsv_round_trip(small_transform, tmp_path):
    r = wavelet_autocovariance(small_transform)
    p = str(tmp_path / "r.tsv")
    write_covariance_tsv(p, r)
    rows = np.loadtxt(p, ndmin=2)
    assert np.array_equal(rows[:, 0], r.scales)
    assert np.array_equal(rows[:, 1], r.values)
    assert np.array_equal(rows[:, 2].astype(np.int64), r.counts)


# -------------------------------------------------------------- JSON views

def test_json_round_trip_and_layout(tmp_path):
    p = str(tmp_path / "d.json")
    payload = {"zeta": 1.25, "alpha": [1, 2, 3], "mid": {"k": None}}
    write_json(p, payload)
    text = open(p).read()
    assert text.endswith("}\n")
    assert text.index('"alpha"') < text.index('"mid"') < text.index('"zeta"')
    assert read_json(p) == payload


def test_report_dict_shape():
    rep = detect_singularities(gen_chirp_jump(1024), MexicanHat(),
                               config=DetectionConfig(max_alpha=2.0))
    d = report_to_dict(rep)
    assert set(d) == {"events", "sigma_hat", "n_lines", "n_significant",
                      "wavelet", "config"}
    assert d["config"]["max_alpha"] == 2.0
    assert d["config"]["threshold_multiplier"] == 3.0
    for ev in d["events"]:
        assert set(ev) == {"location", "kind", "strength", "alpha",
                           "line_span_octaves"}
    assert json.dumps(d)  # JSON-serializable as is


def test_estimate_dict_shape(small_transform):
    from wavekit import fit_power_law
    d = estimate_to_dict(fit_power_law(wavelet_autocovariance(small_transform)))
    assert set(d) == {"beta", "log_intercept", "r_squared", "hurst",
                      "dimension", "classification", "scale_range",
                      "n_scales_used", "warnings"}
    assert isinstance(d["scale_range"], list)
    assert isinstance(d["warnings"], list)
    assert json.dumps(d)


# -------------------------------------------------------------- PGM images

def test_pgm_round_trip(tmp_path):
    img = np.arange(35, dtype=np.uint8).reshape(5, 7) * 7
    p = str(tmp_path / "i.pgm")
    write_pgm(p, img)
    assert np.array_equal(read_pgm(p), img)


def test_pgm_header_comments_are_skipped(tmp_path):
    p = tmp_path / "c.pgm"
    p.write_bytes(b"P5\n# made by hand\n2 2\n255\n\x00\x10\x20\x30")
    assert np.array_equal(read_pgm(str(p)),
                          [[0x00, 0x10], [0x20, 0x30]])


def test_pgm_rejects_other_formats(tmp_path):
    p = tmp_path / "a.pgm"
    p.write_bytes(b"P2\n2 2\n255\n0 1 2 3\n")
    with pytest.raises(InvalidSignalError, match="not a binary PGM"):
        read_pgm(str(p))


def test_pgm_rejects_short_raster(tmp_path):
    p = tmp_path / "t.pgm"
    p.write_bytes(b"P5\n4 4\n255\n\x00\x01\x02")
    with pytest.raises(InvalidSignalError, match="truncated raster"):
        read_pgm(str(p))


# ---------------------------------------------------------- rasterization

def test_density_image_basics():
    rng = np.random.default_rng(0)
    pts = rng.random((5000, 2))
    img = points_to_image(pts, 32, 16)
    assert img.shape == (16, 32) and img.dtype == np.uint8
    assert img.max() == 255


def test_density_image_orientation_and_log_scaling():
    pts = np.array([[0.0, 1.0]] * 1 + [[1.0, 0.0]] * 60)
    img = points_to_image(pts, 4, 4, bbox=(0.0, 1.0, 0.0, 1.0))
    assert img[0, 0] > 0          # y max lands on the top row
    assert img[3, 3] == 255       # busiest pixel saturates
    assert img[0, 0] < 255        # log1p keeps the single point dimmer
    assert img.sum() == int(img[0, 0]) + int(img[3, 3])


def test_density_image_clips_to_bbox():
    pts = np.array([[0.5, 0.5], [99.0, 99.0], [-99.0, -99.0]])
    img = points_to_image(pts, 8, 8, bbox=(0.0, 1.0, 0.0, 1.0))
    assert img[0, 7] > 0 and img[7, 0] > 0  # outliers pinned to corners


@pytest.mark.parametrize("pts", [np.empty((0, 2)), np.zeros((3, 3)),
                                 np.zeros(4)])
def test_density_image_rejects_bad_points(pts):
    with pytest.raises(InvalidSignalError):
        points_to_image(pts, 8, 8)


def test_density_image_rejects_bad_dims():
    with pytest.raises(InvalidSignalError):
        points_to_image(np.zeros((4, 2)), 0, 8)


# ----------------------------------------------------------------- manifests

def test_manifest_round_trip(tmp_path):
    m = RunManifest(subcommand="analyze",
                    argv=("analyze", "f.csv", "--report", "r.json"),
                    params={"threshold": 3.0, "max_alpha": None},
                    inputs=("f.csv",),
                    outputs=("r.json",),
                    version="0.1.0")
    p = str(tmp_path / "run.manifest.json")
    write_run_manifest(p, m)
    assert read_run_manifest(p) == m
