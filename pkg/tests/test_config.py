"""Config parsing, built-in scenarios, validation ordering."""

import numpy as np
import pytest

from faraday_schmidt import (
    ConfigError,
    builtin_config,
    builtin_scenarios,
    config_from_mapping,
    load_config,
    parse_config_text,
)


class TestParser:
    def test_comments_and_blanks_ignored(self):
        text = """
        # a comment
        atom.sigma = 3   # trailing comment

        field.sigma = 24
        """
        mapping = parse_config_text(text)
        assert mapping == {"atom.sigma": "3", "field.sigma": "24"}

    def test_malformed_line_rejected_with_line_number(self):
        with pytest.raises(ConfigError, match="line 2"):
            parse_config_text("atom.sigma = 3\nnonsense\n")

    def test_missing_value_rejected(self):
        with pytest.raises(ConfigError):
            parse_config_text("atom.sigma =\n")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config_text("atom.sigma = 3\natom.sigma = 4\n")


class TestBuiltins:
    def test_scenario_names(self):
        assert builtin_scenarios() == ("fig2a", "fig2b", "fig2c", "fig3a", "fig3b")

    def test_fig2a_parameters(self):
        config = builtin_config("fig2a")
        assert config.sigma_A == 3 and config.sigma_F == 24
        assert config.m0 == 0 and config.n0 == 0
        assert config.N_A == 18
        assert config.tau_count == 31
        assert config.tau_stop == pytest.approx(0.12)

    def test_fig2b_offcenter_parameters(self):
        config = builtin_config("fig2b")
        assert config.m0 == 2 and config.n0 == 12
        assert config.N_A == 200

    def test_atom_counts_follow_caption_convention(self):
        assert builtin_config("fig2c").N_A == 648
        assert builtin_config("fig3a").N_A == 72
        assert builtin_config("fig3b").N_A == 648

    def test_unknown_name_rejected(self):
        with pytest.raises(ConfigError, match="unknown scenario"):
            builtin_config("fig9z")


class TestResolution:
    def test_scenario_inheritance_with_override(self):
        config = config_from_mapping({"scenario": "fig2a", "tau.count": "5"})
        assert config.name == "fig2a"
        assert config.sigma_A == 3
        assert config.tau_count == 5

    def test_unknown_keys_rejected(self):
        with pytest.raises(ConfigError, match="unknown configuration keys"):
            config_from_mapping({"scenario": "fig2a", "atom.sgima": "3"})

    def test_missing_required_width(self):
        with pytest.raises(ConfigError, match="atom.sigma"):
            config_from_mapping({"field.sigma": "24"})

    def test_tau_grid_values(self):
        config = config_from_mapping(
            {"scenario": "fig2a", "tau.start": "0", "tau.stop": "0.1", "tau.count": "11"}
        )
        np.testing.assert_allclose(config.tau_grid(), np.linspace(0, 0.1, 11))

    def test_empty_tau_grid_rejected(self):
        with pytest.raises(ConfigError, match="tau.count"):
            config_from_mapping({"scenario": "fig2a", "tau.count": "0"})

    def test_non_increasing_tau_grid_rejected(self):
        with pytest.raises(ConfigError, match="non-increasing"):
            config_from_mapping(
                {"scenario": "fig2a", "tau.start": "0.1", "tau.stop": "0.1", "tau.count": "5"}
            )

    def test_negative_tau_rejected(self):
        with pytest.raises(ConfigError):
            config_from_mapping({"scenario": "fig2a", "tau.start": "-0.01"})

    def test_single_point_grid_allowed(self):
        config = config_from_mapping(
            {"scenario": "fig2a", "tau.start": "0.02", "tau.count": "1"}
        )
        assert list(config.tau_grid()) == [0.02]

    def test_odd_atom_count_rejected(self):
        with pytest.raises(ConfigError, match="even"):
            config_from_mapping({"scenario": "fig2a", "atom.count": "19"})

    def test_grid_room_condition_enforced(self):
        with pytest.raises(ConfigError, match="N_A/2"):
            config_from_mapping({"atom.sigma": "10", "field.sigma": "24", "atom.count": "20"})

    def test_bad_preset_rejected(self):
        with pytest.raises(ConfigError, match="atom.preset"):
            config_from_mapping({"scenario": "fig2a", "atom.preset": "thermal"})

    def test_dual_coherent_derived_means(self):
        config = config_from_mapping(
            {"scenario": "fig2b", "field.preset": "dual_coherent"}
        )
        assert config.mean_plus == pytest.approx(78.0)
        assert config.mean_minus == pytest.approx(66.0)
        assert config.sigma_F == pytest.approx(24.0)
        assert config.n0 == pytest.approx(12.0)

    def test_dual_coherent_explicit_means(self):
        config = config_from_mapping(
            {
                "atom.sigma": "3",
                "field.preset": "dual_coherent",
                "field.mean_plus": "80",
                "field.mean_minus": "64",
            }
        )
        assert config.sigma_F == pytest.approx(24.0)
        assert config.n0 == pytest.approx(16.0)

    def test_means_require_both(self):
        with pytest.raises(ConfigError, match="together"):
            config_from_mapping(
                {
                    "atom.sigma": "3",
                    "field.preset": "dual_coherent",
                    "field.mean_plus": "80",
                }
            )

    def test_means_only_for_dual_coherent(self):
        with pytest.raises(ConfigError, match="dual_coherent"):
            config_from_mapping({"scenario": "fig2a", "field.mean_plus": "80"})

    def test_overtilted_center_rejected(self):
        with pytest.raises(ConfigError, match="n0"):
            config_from_mapping(
                {
                    "atom.sigma": "3",
                    "field.sigma": "4",
                    "field.center": "5",
                    "field.preset": "dual_coherent",
                }
            )

    def test_spin_coherent_count_defaults(self):
        config = config_from_mapping(
            {"atom.sigma": "3", "field.sigma": "24", "atom.preset": "spin_coherent"}
        )
        assert config.N_A == 18

    def test_width_match_changes_count(self):
        config = config_from_mapping(
            {"atom.sigma": "10", "field.sigma": "24", "atom.width_match": "true"}
        )
        assert config.N_A == 100

    def test_width_match_conflicts_with_explicit_count(self):
        with pytest.raises(ConfigError, match="width_match"):
            config_from_mapping(
                {
                    "atom.sigma": "10",
                    "field.sigma": "24",
                    "atom.count": "200",
                    "atom.width_match": "true",
                }
            )

    def test_bad_number_rejected(self):
        with pytest.raises(ConfigError, match="must be a number"):
            config_from_mapping({"atom.sigma": "three", "field.sigma": "24"})

    def test_bad_boolean_rejected(self):
        with pytest.raises(ConfigError, match="boolean"):
            config_from_mapping({"scenario": "fig2a", "figures": "maybe"})


class TestCavityBlock:
    def test_defaults(self):
        cav = builtin_config("fig2a").cavity
        assert cav.kappa_min == 10.0 and cav.kappa_max == 1000.0
        assert cav.count == 13
        assert cav.convention == "both"

    def test_geometric_grid(self):
        cav = config_from_mapping(
            {"scenario": "fig2a", "cavity.kappa_min": "10", "cavity.kappa_max": "1000", "cavity.count": "3"}
        ).cavity
        np.testing.assert_allclose(cav.kappa_over_g_grid(), [10.0, 100.0, 1000.0])

    def test_inverted_range_rejected(self):
        with pytest.raises(ConfigError, match="kappa_max"):
            config_from_mapping(
                {"scenario": "fig2a", "cavity.kappa_min": "100", "cavity.kappa_max": "10"}
            )

    def test_bad_convention_rejected(self):
        with pytest.raises(ConfigError, match="convention"):
            config_from_mapping({"scenario": "fig2a", "cavity.convention": "exact"})


class TestOverrides:
    def test_cli_overrides_apply_and_revalidate(self):
        config = builtin_config("fig2a").with_overrides(
            out_dir="/tmp/x", tau_count=7, window_mult=4.0, figures=False
        )
        assert config.out_dir == "/tmp/x"
        assert config.tau_count == 7
        assert config.window_mult == 4.0
        assert config.figures is False
        with pytest.raises(ConfigError, match="window_mult"):
            builtin_config("fig2a").with_overrides(window_mult=1.0)

    def test_no_overrides_returns_same_config(self):
        config = builtin_config("fig2a")
        assert config.with_overrides() is config


class TestLoadConfig:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("scenario = fig2b\ntau.count = 3\noutput.dir = out\n")
        config = load_config(str(path))
        assert config.name == "fig2b"
        assert config.tau_count == 3
        assert config.out_dir == "out"

    def test_missing_file_is_config_error(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(str(tmp_path / "absent.cfg"))
