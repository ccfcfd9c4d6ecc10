import pytest

from wreathcoh.exactlin import PreconditionError
from wreathcoh.graded import GradedAbelianGroup
from wreathcoh.verify import (
    corpus,
    default_window,
    restriction_kernels,
    run_corpus,
    thread_count,
    verify_input,
    verify_single,
    wreath_class_order,
)


def test_corpus_shape():
    jobs = corpus()
    assert len(jobs) == 36
    assert (3, 2, 2, default_window(3, 2)) in jobs
    assert default_window(5, 1) == (-1, 11)


@pytest.mark.parametrize("table,p,window", [
    ({0: [0], 1: [3]}, 3, (0, 6)),
    ({0: [0], 2: [9]}, 3, (0, 7)),
    ({1: [2], 2: [0]}, 2, (1, 7)),
    ({0: [0], 1: [4, 2]}, 2, (0, 6)),
    ({0: [6]}, 3, (-2, 5)),
    ({1: [0, 3]}, 3, (1, 7)),
])
def test_verify_input_mixed(table, p, window):
    entry = verify_input(GradedAbelianGroup.from_table(table), p, window)
    assert entry.status == "match", entry.diffs


def test_verify_single_reports_mismatch_fields():
    e = verify_single(3, 9, 1)
    assert e.status == "match" and e.to_dict()["parameters"] == {"p": 3, "n": 9, "d": 1}


def test_parallel_sweep_keeps_order():
    jobs = corpus((2, 3), (1,))
    serial = run_corpus(jobs, 1)
    parallel = run_corpus(jobs, 2)
    assert [e.parameters for e in serial.entries] == [e.parameters for e in parallel.entries]
    assert serial.ok and parallel.ok


def test_thread_env(monkeypatch):
    monkeypatch.setenv("WREATHCOH_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("WREATHCOH_THREADS", "x")
    with pytest.raises(PreconditionError):
        thread_count()


@pytest.mark.parametrize("p,n,want", [(2, 2, 4), (3, 9, 27), (5, 25, 125), (3, 2, 2), (3, 6, 18), (5, 3, 3)])
def test_wreath_class_order(p, n, want):
    assert wreath_class_order(p, n) == want


def test_restriction_kernels_in_predicted_degrees():
    ks = {k.degree: k for k in restriction_kernels(5, 5, 1, [3, 5])}
    assert all(ks[d].factors == (5,) and ks[d].in_p_multiples for d in (3, 5))
