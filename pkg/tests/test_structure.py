import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scbp.corpus import SyntheticCorpusConfig, generate_synthetic_corpus
from scbp.errors import InvalidInputError, ParseError, UnsupportedSizeError
from scbp.structure import (
    ENVELOPE_LENGTH,
    StructureEnvelope,
    envelope_for_length,
    learn_envelope,
    load_envelope,
    normalized_profile,
    resample_to,
    save_envelope,
)
from scbp.transform import dct_forward, dct_inverse


@pytest.fixture(scope="module")
def training_blocks():
    cfg = SyntheticCorpusConfig(n_train=30, n_test=0, block_length=128, sparsity=4, seed=3)
    return generate_synthetic_corpus(cfg)[0]


def test_single_vector_collapses_envelope(rng):
    x = rng.standard_normal(ENVELOPE_LENGTH)
    env = learn_envelope([x])
    gamma = dct_forward(x) / np.linalg.norm(x)
    np.testing.assert_allclose(env.beta_l, gamma, atol=1e-12)
    np.testing.assert_array_equal(env.beta_l, env.beta_u)
    assert env.training_count == 1


def test_two_profile_minmax():
    # profiles e0 and (e0 + e1)/sqrt(2) in coefficient space
    g1 = np.zeros(ENVELOPE_LENGTH)
    g1[0] = 1.0
    g2 = np.zeros(ENVELOPE_LENGTH)
    g2[:2] = 1.0 / np.sqrt(2.0)
    env = learn_envelope([dct_inverse(g1), dct_inverse(3.0 * g2)])
    np.testing.assert_allclose(env.beta_l[:2], [1 / np.sqrt(2), 0.0], atol=1e-12)
    np.testing.assert_allclose(env.beta_u[:2], [1.0, 1 / np.sqrt(2)], atol=1e-12)
    np.testing.assert_allclose(env.beta_l[2:], 0.0, atol=1e-12)


def test_envelope_contains_every_training_profile(training_blocks):
    env = learn_envelope(training_blocks)
    for blk in training_blocks:
        assert env.contains(normalized_profile(blk), atol=1e-12)
    assert np.all(env.beta_l <= env.beta_u)
    assert env.training_count == len(training_blocks)


def test_scale_invariance(training_blocks):
    a = learn_envelope(training_blocks)
    b = learn_envelope([blk.samples * 7.5 for blk in training_blocks])
    np.testing.assert_allclose(a.beta_l, b.beta_l, atol=1e-12)
    np.testing.assert_allclose(a.beta_u, b.beta_u, atol=1e-12)


def test_adding_vectors_only_widens(training_blocks):
    small = learn_envelope(training_blocks[:10])
    large = learn_envelope(training_blocks)
    assert np.all(large.beta_l <= small.beta_l)
    assert np.all(large.beta_u >= small.beta_u)


def test_zero_blocks_are_skipped(caplog, rng):
    x = rng.standard_normal(64)
    env = learn_envelope([np.zeros(64), x])
    assert env.training_count == 1
    assert "all-zero" in caplog.text
    with pytest.raises(InvalidInputError):
        learn_envelope([np.zeros(8)])
    with pytest.raises(InvalidInputError):
        learn_envelope([])


def test_constructor_validates():
    with pytest.raises(InvalidInputError):
        StructureEnvelope(np.zeros(10), np.ones(10))
    hi = np.zeros(ENVELOPE_LENGTH)
    lo = hi.copy()
    lo[5] = 1.0
    with pytest.raises(InvalidInputError, match="index 5"):
        StructureEnvelope(lo, hi)


def test_resample_identity_and_constant():
    v = np.arange(7.0)
    out = resample_to(v, 7)
    np.testing.assert_array_equal(out, v)
    assert out is not v
    np.testing.assert_array_equal(resample_to([2.5], 9), np.full(9, 2.5))


def test_resample_endpoints_align(rng):
    v = rng.standard_normal(37)
    up = resample_to(v, ENVELOPE_LENGTH)
    assert up[0] == v[0] and up[-1] == pytest.approx(v[-1], abs=1e-15)


@pytest.mark.parametrize("n", [2, 50, 256, 1000])
def test_ramp_roundtrip(n):
    ramp = np.linspace(-1.0, 2.0, n)
    back = resample_to(resample_to(ramp, ENVELOPE_LENGTH), n)
    assert np.max(np.abs(back - ramp)) <= 0.01


def test_envelope_for_length(training_blocks):
    env = learn_envelope(training_blocks)
    lo, hi = envelope_for_length(env, ENVELOPE_LENGTH)
    np.testing.assert_array_equal(lo, env.beta_l)
    np.testing.assert_array_equal(hi, env.beta_u)
    lo, hi = envelope_for_length(env, 128)
    assert lo.shape == hi.shape == (128,)
    assert np.all(lo <= hi)
    lo, hi = envelope_for_length(env, 1)
    assert lo[0] == env.beta_l[0] and hi[0] == env.beta_u[0]
    with pytest.raises(UnsupportedSizeError):
        envelope_for_length(env, ENVELOPE_LENGTH + 1)
    with pytest.raises(InvalidInputError):
        envelope_for_length(env, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, ENVELOPE_LENGTH), st.integers(0, 2**32 - 1))
def test_envelope_for_length_is_ordered(n, seed):
    rng = np.random.default_rng(seed)
    env = learn_envelope([rng.standard_normal(int(rng.integers(1, 300))) for _ in range(3)])
    lo, hi = envelope_for_length(env, n)
    assert lo.shape == (n,) and np.all(lo <= hi)


def test_save_load_roundtrip(tmp_path, training_blocks):
    env = learn_envelope(training_blocks, label="aa", created_from="unit test")
    path = tmp_path / "aa.env"
    save_envelope(env, path)
    back = load_envelope(path)
    assert back.beta_l.tobytes() == env.beta_l.tobytes()
    assert back.beta_u.tobytes() == env.beta_u.tobytes()
    assert (back.label, back.training_count, back.created_from) == ("aa", 30, "unit test")


def _write_rows(path, rows, length=ENVELOPE_LENGTH):
    header = ["label=x", "training_count=1", "created_from=", f"length={length}"]
    path.write_text("\n".join(header + [f"{lo!r} {hi!r}" for lo, hi in rows]) + "\n")


def test_load_rejects_crossed_row(tmp_path):
    rows = [(0.0, 0.1)] * ENVELOPE_LENGTH
    rows[9] = (0.5, 0.1)
    path = tmp_path / "bad.env"
    _write_rows(path, rows)
    with pytest.raises(ParseError) as err:
        load_envelope(path)
    assert err.value.lineno == 14


def test_load_rejects_truncated_file(tmp_path):
    path = tmp_path / "short.env"
    _write_rows(path, [(0.0, 0.1)] * 1023)
    with pytest.raises(ParseError, match="1023"):
        load_envelope(path)


@pytest.mark.parametrize("body", ["length=512\n", "label=x\nlength=1024\n0.0 0.1\n", "not a file"])
def test_load_rejects_malformed(tmp_path, body):
    path = tmp_path / "m.env"
    path.write_text(body)
    with pytest.raises(ParseError):
        load_envelope(path)
