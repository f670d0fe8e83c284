use std::f64::consts::PI;

use super::AnalogParams;

/// Difference amplifier: `gain * |p_center - p_neighbor|`, limited to
/// `[0, v_sine_amp]`.
#[inline]
pub fn diff_amp(p_center: f64, p_neighbor: f64, params: &AnalogParams) -> f64 {
    (params.gain * (p_center - p_neighbor).abs()).clamp(0.0, params.v_sine_amp)
}

/// Fraction of a sine period during which `v_sine_amp * sin(wt)` exceeds
/// the DC level `v_diff`: `acos(v_diff / v_sine_amp) / pi`.
#[inline]
pub fn vco_duty(v_diff: f64, params: &AnalogParams) -> f64 {
    let x = (v_diff / params.v_sine_amp).clamp(-1.0, 1.0);
    x.acos() / PI
}

/// Whole periods elapsed and phase within the current period, both in
/// units of the period. Values within 1e-9 of a period boundary snap onto it.
#[inline]
fn cycles(t: f64, f: f64) -> (f64, f64) {
    let c = t * f;
    let k = (c + 1e-9).floor();
    (k, (c - k).max(0.0))
}

/// VCO output level at slot-local time `t`. The high interval sits at the
/// start of each period.
#[inline]
pub fn vco_level(t: f64, duty: f64, f: f64) -> bool {
    let (_, phase) = cycles(t, f);
    phase < duty
}

/// Total time the VCO output has been high over `[0, t]`.
#[inline]
pub fn vco_high_time(t: f64, duty: f64, f: f64) -> f64 {
    let (k, phase) = cycles(t, f);
    (k * duty + phase.min(duty)) / f
}

/// Earliest time at which the accumulated high time reaches `h`.
pub(crate) fn vco_time_for_high(h: f64, duty: f64, f: f64) -> f64 {
    if h <= 0.0 {
        return 0.0;
    }
    let per_period = duty / f;
    let mut k = (h / per_period).floor();
    let mut rem = h - k * per_period;
    if rem <= 0.0 && k > 0.0 {
        k -= 1.0;
        rem += per_period;
    }
    k / f + rem
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn amplifier() {
        let p = AnalogParams::default();
        assert_eq!(diff_amp(0.4, 0.4, &p), 0.0);
        assert_eq!(diff_amp(0.0, 1.0, &p), 3.0);
        assert_eq!(diff_amp(1.0, 0.0, &p), 3.0);
        assert!((diff_amp(0.5, 0.2, &p) - 0.9).abs() < 1e-12);
        let hot = AnalogParams { gain: 10.0, ..p };
        assert_eq!(diff_amp(0.0, 0.5, &hot), 3.0);
    }

    #[test]
    fn duty_closed_form() {
        let p = AnalogParams::default();
        assert!((vco_duty(0.0, &p) - 0.5).abs() < 1e-12);
        assert!(vco_duty(3.0, &p).abs() < 1e-12);
        assert!((vco_duty(1.5, &p) - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn high_time_over_whole_periods() {
        let f = 100e3;
        for duty in [0.0, 0.25, 0.403, 1.0] {
            let h = vco_high_time(0.02, duty, f);
            assert!((h - duty * 0.02).abs() < 1e-15, "duty {duty}: {h}");
        }
        // half a period into a 0.3 duty wave: 0.3 of a period was high
        assert!((vco_high_time(0.5 / f, 0.3, f) - 0.3 / f).abs() < 1e-18);
        assert!(vco_level(0.0, 0.3, f));
        assert!(!vco_level(0.5 / f, 0.3, f));
        assert!(vco_level(1.0 / f, 0.3, f));
    }

    #[test]
    fn inverse_high_time() {
        let f = 100e3;
        for (duty, h) in [(0.5, 3.2e-6), (0.25, 2.5e-6), (1.0, 7.7e-3), (0.403, 1e-3)] {
            let t = vco_time_for_high(h, duty, f);
            assert!((vco_high_time(t, duty, f) - h).abs() < 1e-15);
            // earliest: slightly earlier has less
            assert!(vco_high_time(t - 1e-9, duty, f) < h);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn duty_strictly_decreasing(a in 0.0f64..=3.0, b in 0.0f64..=3.0) {
                let p = AnalogParams::default();
                prop_assume!((a - b).abs() > 1e-9);
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                prop_assert!(vco_duty(lo, &p) > vco_duty(hi, &p));
            }

            #[test]
            fn high_time_monotone(t in 0.0f64..0.02, dt in 0.0f64..1e-6, duty in 0.0f64..=1.0) {
                let f = 100e3;
                prop_assert!(vco_high_time(t + dt, duty, f) >= vco_high_time(t, duty, f));
                prop_assert!(vco_high_time(t, duty, f) <= t + 1e-13);
            }
        }
    }
}
