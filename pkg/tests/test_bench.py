import pytest

from dfacert.bench import (
    BenchRecord, records_from_csv, records_to_csv, run_bench, survival_records,
)
from dfacert.knowledge import ScaleError
from dfacert.plotting import plot_records


@pytest.fixture(scope="module")
def ln_rows():
    return run_bench("ln", 3)


def by(rows, n, refuter):
    (r,) = [r for r in rows if r.n == n and r.refuter == refuter]
    return r


def test_constructions_stay_within_bounds(ln_rows):
    for r in ln_rows:
        assert r.length <= r.bound, r
    assert [by(ln_rows, n, "offline").length for n in (1, 2, 3)] == [68, 176, 360]


def test_necessity_budgets(ln_rows):
    assert by(ln_rows, 3, "offline-necessity").length == 15
    assert by(ln_rows, 3, "online-necessity").length == 12
    assert by(ln_rows, 1, "offline-necessity").length == 0
    assert by(ln_rows, 1, "online-necessity").length == 2


def test_survival_rows():
    a_row, b_row = survival_records(4)
    assert (a_row.length, a_row.bound) == (8, 8)
    assert (b_row.length, b_row.bound) == (8, 8)


def test_csv_round_trip(ln_rows):
    assert records_from_csv(records_to_csv(ln_rows)) == ln_rows
    assert records_to_csv([]).strip() == "family,n,N,k,refuter,length,bound"


def test_limits():
    with pytest.raises(ScaleError):
        run_bench("ln", 9)
    with pytest.raises(ValueError):
        run_bench("nope", 2)


def test_figure(tmp_path, ln_rows):
    path = tmp_path / "fig.png"
    plot_records(ln_rows + [BenchRecord("ln", 4, 11, 10, "offline", 640, 1320)], path, "ln")
    assert path.read_bytes()[:4] == b"\x89PNG"
