"""SVG rendering tests: glyph classes, counts, and degenerate fields."""
import numpy as np
import pytest

from boundaryvote.geometry import region_xs
from boundaryvote.harness import SimConfig, run_trial_field
from boundaryvote.render import GLYPH_CLASSES, classify_outcomes, render_field
from boundaryvote.sampling import SensorField, assign_measurements


def glyph_count(svg: str, cls: str) -> int:
    start = svg.index(f'<g class="{cls}"')
    end = svg.index("</g>", start)
    body = svg[start:end]
    return body.count("<circle") + body.count("<rect")


class TestRender:
    def test_classes_and_counts_match_metrics(self, tmp_path):
        cfg = SimConfig(lam=600.0, p=0.15, r=0.05, region=region_xs(), seed=1)
        field, outcome, m = run_trial_field(cfg, 0)
        out = tmp_path / "trial.svg"
        svg = render_field(field, outcome, cfg.region, out)
        assert out.read_text() == svg
        assert svg.startswith("<svg") or svg.startswith("<?xml") or "<svg" in svg
        assert glyph_count(svg, "corrected") == m.corrected
        assert glyph_count(svg, "still-wrong") == m.initial_errors - m.corrected
        assert glyph_count(svg, "new-wrong") == m.new_errors
        assert glyph_count(svg, "correct") == m.n_sensors - m.initial_errors - m.new_errors
        assert "<polygon" in svg and "legend" in svg

    def test_all_four_classes_present_in_fig1_regime(self):
        cfg = SimConfig(lam=600.0, p=0.15, r=0.05, region=region_xs(), seed=2)
        field, outcome, _ = run_trial_field(cfg, 0)
        svg = render_field(field, outcome, cfg.region)
        for cls in GLYPH_CLASSES:
            assert glyph_count(svg, cls) > 0

    def test_p_zero_only_correct_and_new(self):
        cfg = SimConfig(lam=600.0, p=0.0, r=0.05, region=region_xs(), seed=3)
        field, outcome, m = run_trial_field(cfg, 0)
        svg = render_field(field, outcome, cfg.region)
        assert glyph_count(svg, "corrected") == 0
        assert glyph_count(svg, "still-wrong") == 0
        assert glyph_count(svg, "new-wrong") == m.new_errors

    def test_empty_field_renders_outline_only(self):
        field = SensorField(x=np.empty(0), y=np.empty(0), lam=1.0, seed=0)
        field = assign_measurements(field, region_xs(), 0.1)

        class _Out:
            decided = np.empty(0, dtype=bool)

        svg = render_field(field, _Out(), region_xs())
        assert "<polygon" in svg
        for cls in GLYPH_CLASSES:
            assert glyph_count(svg, cls) == 0

    def test_requires_measured_field(self):
        from boundaryvote.sampling import sample_field

        field = sample_field(50, seed=1)

        class _Out:
            decided = np.zeros(field.n, dtype=bool)

        with pytest.raises(ValueError):
            render_field(field, _Out(), region_xs())

    def test_outcome_masks_partition(self):
        cfg = SimConfig(lam=500.0, p=0.2, r=0.05, region=region_xs(), seed=5)
        field, outcome, _ = run_trial_field(cfg, 0)
        masks = classify_outcomes(field.truth, field.measured, outcome.decided)
        total = sum(int(m.sum()) for m in masks)
        assert total == field.n
        stacked = np.stack(masks)
        assert np.all(stacked.sum(axis=0) == 1)
