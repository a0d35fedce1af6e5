"""Closed forms of the constant-splitting/Gaussian-coupling model."""

from __future__ import annotations

import json
import math
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from superddp import (
    GaussianParams,
    ddp_series_small_alpha,
    superadiabatic_image,
    to_pulse_model,
    transition_points_closed,
)
from superddp.gaussian import (
    DomainError,
    im_d_small_alpha_limit,
    im_d_uniform,
    probability_all_points,
    probability_two_point,
    re_d_uniform,
    transition_points_small_alpha,
)

FIXTURES = Path(__file__).parent / "fixtures"


def _band_rows():
    return json.loads((FIXTURES / "d_band.json").read_text())


def test_closed_points_satisfy_defining_equation():
    worst = 0.0
    for i in range(13):
        alpha = 0.05 * (100.0 ** (i / 12.0))  # log grid 0.05 .. 5
        params = GaussianParams(alpha, 1.0, 1.0)
        model = to_pulse_model(params)
        for k in range(4):
            for t in transition_points_closed(params, k):
                worst = max(worst, abs(model.esq(t)))
    assert worst <= 1e-12 * model.scale**2, f"worst |E^2| {worst:.3e}"


def test_closed_points_are_mirror_pairs():
    params = GaussianParams(0.7, 1.0, 1.0)
    for k in range(3):
        tm, tp = transition_points_closed(params, k)
        assert tm == -tp.conjugate()
        assert tp.imag > 0.0


def test_points_order_by_height():
    params = GaussianParams(0.5, 1.0, 1.0)
    heights = [transition_points_closed(params, k)[1].imag for k in range(4)]
    assert heights == sorted(heights)


def test_small_alpha_points_approach_closed_form():
    params = GaussianParams(1e-3, 1.0, 1.0)
    for k in (0, 1):
        _, closed = transition_points_closed(params, k)
        _, approx = transition_points_small_alpha(params, k)
        tol = 0.05 if k else 0.02
        assert abs(approx - closed) / abs(closed) <= tol


def test_series_zeroth_order_is_endpoint():
    params = GaussianParams(0.3, 2.0, 1.5)
    _, tp = transition_points_closed(params, 0)
    assert ddp_series_small_alpha(params, 0) == params.action * tp


def test_series_against_frozen_reference():
    rows = json.loads((FIXTURES / "d_reference.json").read_text())
    row = next(r for r in rows if r["alpha"] == "0.05")
    ref = complex(float(row["d_plus_re"]), float(row["d_plus_im"]))
    params = GaussianParams(0.05, 1.0, 1.0)
    # the expansion parameter has modulus 1 at the endpoint, so the tail
    # is algebraic: ~n^{-3/2} prefactors give ~2e-4 at 20 terms and ~1e-5
    # once the loop stops where the factors leave double range
    short = ddp_series_small_alpha(params, 20)
    assert abs(short - ref) / abs(ref) <= 5e-4
    long = ddp_series_small_alpha(params, 2000)
    assert abs(long - ref) / abs(ref) <= 5e-5


def test_series_saturation_cutoff_is_harmless():
    # the trailing factors overflow/underflow near 2n ln(1/alpha) ~ 700;
    # adding nominal terms past that point must not move the sum
    params = GaussianParams(0.05, 1.0, 1.0)
    assert ddp_series_small_alpha(params, 120) == ddp_series_small_alpha(
        params, 4000
    )


def test_im_d_uniform_exact_at_alpha_one():
    rows = json.loads((FIXTURES / "d_reference.json").read_text())
    row = next(r for r in rows if r["alpha"] == "1")
    ref_im = float(row["d_plus_im"])
    got = im_d_uniform(GaussianParams(1.0, 1.0, 1.0))
    assert abs(got - ref_im) / ref_im <= 1e-5


def test_uniform_forms_track_reference_band():
    worst_im = worst_re = 0.0
    for row in _band_rows():
        params = GaussianParams(float(row["alpha"]), 1.0, 1.0)
        re_ref = float(row["re_d"])
        im_ref = float(row["im_d"])
        worst_im = max(worst_im, abs(im_d_uniform(params) - im_ref) / im_ref)
        worst_re = max(worst_re, abs(re_d_uniform(params) - re_ref) / re_ref)
    assert worst_im <= 0.03, f"Im D worst rel dev {worst_im:.3e}"
    assert worst_re <= 0.03, f"Re D worst rel dev {worst_re:.3e}"


def test_im_d_limit_matches_uniform_at_small_alpha():
    ratios = [
        im_d_small_alpha_limit(GaussianParams(a, 1.0, 1.0))
        / im_d_uniform(GaussianParams(a, 1.0, 1.0))
        for a in (1e-2, 1e-4, 1e-6)
    ]
    assert ratios[0] > ratios[1] > ratios[2] > 1.0
    assert ratios[2] - 1.0 <= 0.02


def test_re_d_uniform_monotone_in_coupling():
    vals = [
        re_d_uniform(GaussianParams(0.1 + 0.098 * i, 1.0, 1.0))
        for i in range(51)
    ]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_re_d_of_image_monotone_in_gap():
    vals = [
        re_d_uniform(superadiabatic_image(2.0 + 0.16 * i, 1.0))
        for i in range(51)
    ]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_superadiabatic_image_fields():
    img = superadiabatic_image(4.0, 0.5)
    assert img.coupling_amplitude == pytest.approx(math.sqrt(math.pi) / 0.5)
    assert img.splitting == 4.0
    assert img.alpha == pytest.approx(math.sqrt(math.pi) / (0.5 * 4.0))
    assert img.action == pytest.approx(2.0)


def test_to_pulse_model_esq_consistency():
    params = GaussianParams(0.8, 2.0, 1.5)
    model = to_pulse_model(params)
    for t in (0.0, 0.7, -1.2, 0.3 + 0.9j):
        om = params.coupling_amplitude * pow(math.e, -((t / 1.5) ** 2))
        expect = om * om + 4.0
        assert model.esq(t) == pytest.approx(expect, rel=1e-12)


@given(
    st.floats(-12.0, 12.0, allow_nan=False),
    st.floats(0.0, 6.0, allow_nan=False),
)
def test_all_points_form_is_damped_two_point(re_d, im_d):
    lhs = probability_all_points(re_d, im_d)
    e = math.exp(-2.0 * im_d)
    rhs = probability_two_point(re_d, im_d) / (1.0 + e) ** 2
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-300)


@given(
    st.floats(-50.0, 50.0, allow_nan=False),
    st.floats(0.0, 50.0, allow_nan=False),
)
def test_all_points_form_bounded_by_one(re_d, im_d):
    assert 0.0 <= probability_all_points(re_d, im_d) <= 1.0


def test_two_point_form_can_exceed_one():
    assert probability_two_point(0.5 * math.pi, 0.1) > 1.0


def test_domain_rejections():
    with pytest.raises(DomainError):
        GaussianParams(0.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        GaussianParams(1.0, -1.0, 1.0)
    with pytest.raises(DomainError):
        GaussianParams(1.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        transition_points_closed(GaussianParams(1.0, 1.0, 1.0), -1)
    with pytest.raises(DomainError):
        transition_points_small_alpha(GaussianParams(1.5, 1.0, 1.0), 0)
    with pytest.raises(DomainError):
        ddp_series_small_alpha(GaussianParams(1.0, 1.0, 1.0), 10)
    with pytest.raises(DomainError):
        ddp_series_small_alpha(GaussianParams(0.5, 1.0, 1.0), -1)
    with pytest.raises(DomainError):
        im_d_small_alpha_limit(GaussianParams(1.4, 1.0, 1.0))
    with pytest.raises(DomainError):
        probability_two_point(1.0, -0.1)
    with pytest.raises(DomainError):
        probability_all_points(1.0, -1e-9)
