import os
import struct
import tempfile
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frr.errors import FormatError, InvalidArgumentError
from frr.fields import ComplexField, make_grid
from frr.io import atomic_write, read_cfld, read_pgm, write_cfld, write_pgm


def raw_pgm(path, width, height, maxval, payload, header=None):
    header = header or f"P5\n{width} {height}\n{maxval}\n".encode()
    path.write_bytes(header + bytes(payload))
    return path


def payload_of(path):
    data = path.read_bytes()
    # header of files written here is exactly three lines
    return data.split(b"\n", 3)[3]


def test_read_small_pgm(tmp_path):
    p = raw_pgm(tmp_path / "a.pgm", 2, 2, 255, [0, 255, 128, 64])
    pixels, maxval = read_pgm(p)
    assert maxval == 255
    np.testing.assert_array_equal(pixels, [[0, 1], [128 / 255, 64 / 255]])


def test_header_comments_and_whitespace(tmp_path):
    header = b"P5 # comment\n# another\n 2\t2 \n255\n"
    p = raw_pgm(tmp_path / "c.pgm", 2, 2, 255, [1, 2, 3, 4], header=header)
    pixels, _ = read_pgm(p)
    np.testing.assert_allclose(pixels * 255, [[1, 2], [3, 4]])


def test_sixteen_bit(tmp_path):
    payload = struct.pack(">4H", 0, 1000, 65535, 7)
    p = raw_pgm(tmp_path / "w.pgm", 2, 2, 65535, payload)
    pixels, maxval = read_pgm(p)
    assert maxval == 65535
    np.testing.assert_allclose(pixels * 65535, [[0, 1000], [65535, 7]])


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9), st.sampled_from([1, 15, 255, 256, 4095, 65535]), st.data())
def test_payload_round_trip(width, height, maxval, data):
    values = data.draw(st.lists(st.integers(0, maxval), min_size=width * height, max_size=width * height))
    fmt = ">{}H".format(len(values)) if maxval > 255 else "{}B".format(len(values))
    payload = struct.pack(fmt, *values)
    with tempfile.TemporaryDirectory() as d:
        src = raw_pgm(Path(d) / "in.pgm", width, height, maxval, payload, header=f"P5 {width} {height} {maxval}\n".encode())
        pixels, mv = read_pgm(src)
        write_pgm(pixels, Path(d) / "out.pgm", maxval=mv)
        assert payload_of(Path(d) / "out.pgm") == payload


def test_p2_rejected(tmp_path):
    p = tmp_path / "ascii.pgm"
    p.write_bytes(b"P2\n2 2\n255\n0 1 2 3\n")
    with pytest.raises(FormatError, match="P2") as exc:
        read_pgm(p)
    assert exc.value.offset == 0


@pytest.mark.parametrize(
    "blob,offset",
    [
        (b"P6\n1 1\n255\n\x00", 0),
        (b"P5\n2 x\n255\n", 5),
        (b"P5\n2 2\n", 7),
        (b"P5\n2 2\n70000\n" + bytes(8), None),
    ],
)
def test_malformed_headers(tmp_path, blob, offset):
    p = tmp_path / "bad.pgm"
    p.write_bytes(blob)
    with pytest.raises(FormatError) as exc:
        read_pgm(p)
    if offset is not None:
        assert exc.value.offset == offset
        assert f"byte offset {offset}" in str(exc.value)


def test_truncated_payload(tmp_path):
    p = raw_pgm(tmp_path / "t.pgm", 4, 4, 255, [0] * 10)
    with pytest.raises(FormatError, match="truncated"):
        read_pgm(p)


def test_write_pgm_validation(tmp_path):
    with pytest.raises(InvalidArgumentError):
        write_pgm(np.zeros(4), tmp_path / "x.pgm")
    with pytest.raises(InvalidArgumentError):
        write_pgm(np.full((2, 2), np.nan), tmp_path / "x.pgm")
    with pytest.raises(InvalidArgumentError):
        write_pgm(np.zeros((2, 2)), tmp_path / "x.pgm", maxval=0)
    assert not (tmp_path / "x.pgm").exists()


def test_write_pgm_clips_and_rounds(tmp_path):
    write_pgm(np.array([[-1.0, 0.5], [1.0, 2.0]]), tmp_path / "r.pgm")
    assert (tmp_path / "r.pgm").read_bytes() == b"P5\n2 2\n255\n" + bytes([0, 128, 255, 255])


def test_cfld_round_trip_bitwise(tmp_path):
    g = make_grid(4)
    f = ComplexField(g, [1.5 - 2j, np.pi, -0.0 + 1e-300j, 7j])
    write_cfld(f, tmp_path / "f.cfld")
    blob = (tmp_path / "f.cfld").read_bytes()
    assert blob[:16] == b"CFLD" + struct.pack("<III", 1, 1, 4)
    assert len(blob) == 16 + 4 * 16
    back = read_cfld(tmp_path / "f.cfld")
    assert back.samples.tobytes() == f.samples.tobytes()
    assert back.grid == g


def test_cfld_2d_row_major(tmp_path):
    data = np.arange(16).reshape(4, 4) * (1 + 1j)
    write_cfld(ComplexField(make_grid(4, 2), data), tmp_path / "f.cfld")
    blob = (tmp_path / "f.cfld").read_bytes()
    first = struct.unpack("<4d", blob[16:48])
    assert first == (0.0, 0.0, 1.0, 1.0)
    np.testing.assert_array_equal(read_cfld(tmp_path / "f.cfld").samples, data)


def test_cfld_size_mismatch(tmp_path):
    p = tmp_path / "short.cfld"
    p.write_bytes(b"CFLD" + struct.pack("<III", 1, 1, 4) + bytes(40))
    with pytest.raises(FormatError, match="expected 80 bytes, got 56"):
        read_cfld(p)


@pytest.mark.parametrize(
    "header,match",
    [
        (b"CFLX" + struct.pack("<III", 1, 1, 4), "magic"),
        (b"CFLD" + struct.pack("<III", 2, 1, 4), "version"),
        (b"CFLD" + struct.pack("<III", 1, 3, 4), "dims"),
    ],
)
def test_cfld_bad_headers(tmp_path, header, match):
    p = tmp_path / "bad.cfld"
    p.write_bytes(header + bytes(64))
    with pytest.raises(FormatError, match=match):
        read_cfld(p)


def test_cfld_too_short(tmp_path):
    p = tmp_path / "stub.cfld"
    p.write_bytes(b"CFL")
    with pytest.raises(FormatError, match="too short"):
        read_cfld(p)


def test_atomic_write_leaves_nothing_on_error(tmp_path):
    target = tmp_path / "out.bin"
    with pytest.raises(RuntimeError):
        with atomic_write(target) as fh:
            fh.write(b"partial")
            raise RuntimeError("boom")
    assert os.listdir(tmp_path) == []


def test_atomic_write_replaces(tmp_path):
    target = tmp_path / "out.bin"
    target.write_bytes(b"old")
    with atomic_write(target) as fh:
        fh.write(b"new")
    assert target.read_bytes() == b"new"
    assert os.listdir(tmp_path) == ["out.bin"]
