import json
from pathlib import Path

import numpy as np
import pytest

from kappa_star import io
from kappa_star.errors import ContractError
from kappa_star.harness import compute_kernel, compute_product

DATA = Path(__file__).parent / "data"


def test_symbol_round_trip_is_bit_exact(tmp_path, gauss2):
    path = io.write_symbol(gauss2, tmp_path / "f.csv")
    back = io.read_symbol(path)
    assert np.array_equal(back.values, gauss2.values)
    assert back.vgrid == gauss2.vgrid and back.bgrid == gauss2.bgrid
    assert tuple(back.support) == tuple(gauss2.support)


def test_symbol_csv_layout(tmp_path, gauss):
    path = io.write_symbol(gauss, tmp_path / "g.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == "v,beta,re,im"
    assert len(lines) == 1 + gauss.vgrid.n * gauss.bgrid.n
    assert json.loads(io.side_file(path).read_text())["vgrid"]["n"] == gauss.vgrid.n


def test_bad_header(tmp_path, gauss):
    path = io.write_symbol(gauss, tmp_path / "g.csv")
    text = path.read_text().replace("v,beta,re,im", "x,y,re,im", 1)
    path.write_text(text)
    with pytest.raises(ContractError):
        io.read_symbol(path)


def test_product_of_zeros(tmp_path):
    cfg = {"product": {"f": {"zero": True}, "g": {"zero": True}, "op": "right"}}
    paths = compute_product(cfg, tmp_path)
    out = io.read_symbol(paths[-1])
    assert np.all(out.values == 0)


def test_golden_kernel(tmp_path):
    cfg = json.loads((DATA / "golden_config.json").read_text())
    paths = compute_kernel(cfg, tmp_path)
    got = io.read_kernel(paths[-1])
    ref = io.read_kernel(DATA / "golden_kernel.csv")
    assert got.sgrid == ref.sgrid and got.ugrid == ref.ugrid
    assert (got.sign, got.phi) == (ref.sign, ref.phi)
    assert np.max(np.abs(got.values - ref.values)) <= 1e-10 * np.max(np.abs(ref.values))


def test_kernel_round_trip(tmp_path):
    ref = io.read_kernel(DATA / "golden_kernel.csv")
    back = io.read_kernel(io.write_kernel(ref, tmp_path / "k.csv"))
    assert np.array_equal(back.values, ref.values)
