//! Behavioral model of the analog similarity pipeline.
//!
//! For each 3×3 window the center pixel is compared against every window
//! pixel in nine clock slots. In each slot:
//!
//! 1. the difference amplifier outputs `gain * |center - pixel|`, capped at
//!    the sine amplitude;
//! 2. the VCO comparator checks that level against a sinusoid and emits a
//!    square wave whose duty cycle falls as the difference grows;
//! 3. the integrate-and-fire neuron charges while the VCO output is high and
//!    fires once its charge reaches `v_ref`;
//! 4. the normalized neuron output is shifted into a 9-cell SIPO register on
//!    the clock edge closing the slot.
//!
//! After the ninth slot the register gates the switched averaging circuit.
//! Components are ideal: lossless charging, no leak, no noise, and a charge
//! reset at every slot boundary.

mod analog;
mod neuron;
mod pipeline;
mod sipo;
mod trace;

pub use analog::{diff_amp, vco_duty, vco_high_time, vco_level};
pub use neuron::{
    normalize_neuron_output, simulate_neuron_slot, slot_fires, NeuronState, SlotSample,
};
pub use pipeline::{
    averaging_circuit, run_window_pipeline, run_window_pipeline_into, PipelineOutcome, SlotReport,
    COMPARISON_ORDER,
};
pub use sipo::SipoRegister;
pub use trace::{CsvTraceWriter, NeuronTrace, NullSink, TraceSample, TraceSink, TRACE_HEADER};

use std::f64::consts::PI;

use crate::{Error, Result, Threshold};

/// Parameters of the behavioral circuit.
///
/// Defaults follow the published circuit configuration: 3 V / 100 kHz sine,
/// `v_ref` = 1.12 V, 50 Hz clock with 2.5 % duty. `charge_rate` lumps the
/// pulse amplitude and the C1/C2 charging capacitances; the default is
/// calibrated for θ = 0.3. Parts of that configuration with no behavioral
/// role are not modeled: NMOS/PMOS W/L 0.36/0.18 and 0.72/0.18 µm, ±3 V
/// rails, V_dd = 1 V, V_c/V_th = 0.6/0.4, C3 = 1 µF, C4 = 0.01 pF,
/// R0/R1/R2 = 1k/10k/100k Ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalogParams {
    /// Sine amplitude at the VCO comparator, volts.
    pub v_sine_amp: f64,
    /// Sine (and VCO output) frequency, hertz.
    pub f_sine: f64,
    /// Difference-amplifier gain, volts per unit of normalized intensity.
    pub gain: f64,
    /// Neuron firing threshold, volts.
    pub v_ref: f64,
    /// Neuron charging rate while the VCO output is high, volts per second.
    pub charge_rate: f64,
    /// Shift-register clock, hertz.
    pub clk_freq: f64,
    /// One comparison slot, seconds; equals `1 / clk_freq`.
    pub slot_duration: f64,
    /// Simulation timestep, seconds.
    pub dt: f64,
    /// Fraction of each clock period the clock is high. Only drawn in the
    /// trace; the register shifts on the falling edge at the slot end.
    pub clk_duty: f64,
}

pub const DEFAULT_THETA: f64 = 0.3;

impl Default for AnalogParams {
    fn default() -> Self {
        let mut p = Self {
            v_sine_amp: 3.0,
            f_sine: 100e3,
            gain: 3.0,
            v_ref: 1.12,
            charge_rate: 1.0,
            clk_freq: 50.0,
            slot_duration: 1.0 / 50.0,
            dt: 1.0 / (100.0 * 100e3),
            clk_duty: 0.025,
        };
        p.charge_rate = p.v_ref / (firing_duty_for(DEFAULT_THETA, &p) * p.slot_duration);
        p
    }
}

/// Duty cycle that must be reached for a slot with difference `theta` to
/// deliver exactly `v_ref` of charge.
fn firing_duty_for(theta: f64, p: &AnalogParams) -> f64 {
    (theta * p.gain / p.v_sine_amp).acos() / PI
}

impl AnalogParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("v_sine_amp", self.v_sine_amp),
            ("f_sine", self.f_sine),
            ("gain", self.gain),
            ("v_ref", self.v_ref),
            ("charge_rate", self.charge_rate),
            ("clk_freq", self.clk_freq),
            ("slot_duration", self.slot_duration),
            ("dt", self.dt),
        ];
        for (name, v) in fields {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParams(format!(
                    "{name} = {v} must be positive"
                )));
            }
        }
        if !(0.0..1.0).contains(&self.clk_duty) {
            return Err(Error::InvalidParams(format!(
                "clk_duty {} outside [0, 1)",
                self.clk_duty
            )));
        }
        if self.dt > 1.0 / (20.0 * self.f_sine) * (1.0 + 1e-12) {
            return Err(Error::InvalidParams(format!(
                "dt {} resolves a sine period with fewer than 20 steps",
                self.dt
            )));
        }
        if ((self.slot_duration * self.clk_freq) - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParams(format!(
                "slot_duration {} is not one clock period at {} Hz",
                self.slot_duration, self.clk_freq
            )));
        }
        let steps = self.slot_duration / self.dt;
        if (steps - steps.round()).abs() > 1e-6 {
            return Err(Error::InvalidParams(format!(
                "slot_duration {} is not a whole number of {} s steps",
                self.slot_duration, self.dt
            )));
        }
        Ok(())
    }

    /// Parameters for a different clock with `slot_duration` kept in sync.
    pub fn with_clock(mut self, clk_freq: f64) -> Self {
        self.clk_freq = clk_freq;
        self.slot_duration = 1.0 / clk_freq;
        self
    }

    pub fn steps_per_slot(&self) -> usize {
        (self.slot_duration / self.dt).round() as usize
    }

    /// Minimum duty cycle at which a slot fires:
    /// `v_ref / (charge_rate * slot_duration)`.
    pub fn firing_duty(&self) -> f64 {
        self.v_ref / (self.charge_rate * self.slot_duration)
    }

    /// Largest normalized difference that still fires,
    /// `(v_sine_amp / gain) * cos(pi * firing_duty)`.
    ///
    /// Negative when even identical pixels cannot fire.
    pub fn difference_threshold(&self) -> f64 {
        let d = self.firing_duty();
        if d > 1.0 {
            return f64::NEG_INFINITY;
        }
        self.v_sine_amp / self.gain * (PI * d).cos()
    }

    /// Range of thresholds that [`calibrate`] can reach with these rails,
    /// as an open interval.
    pub fn feasible_theta(&self) -> (f64, f64) {
        (0.0, (self.v_sine_amp / self.gain).min(1.0))
    }
}

/// Solves for `charge_rate` so that a slot fires iff `|p_c - p_n| <= theta`.
///
/// `v_ref`, gain and amplitude stay fixed. The closed-form solution is
/// checked by simulating the two quantized 8-bit difference levels on either
/// side of the boundary.
pub fn calibrate(theta: Threshold, base: &AnalogParams) -> Result<AnalogParams> {
    base.validate()?;
    let t = theta.value();
    let (min, max) = base.feasible_theta();
    if !(t > min && t * base.gain / base.v_sine_amp < 1.0) {
        return Err(Error::Calibration { theta: t, min, max });
    }
    let mut p = *base;
    p.charge_rate = p.v_ref / (firing_duty_for(t, &p) * p.slot_duration);

    let boundary = t * 255.0;
    let below = boundary.ceil() as i64 - 2;
    let above = boundary.floor() as i64 + 2;
    for (level, should_fire) in [(below, true), (above, false)] {
        if !(0..=255).contains(&level) {
            continue;
        }
        let v = diff_amp(0.0, level as f64 / 255.0, &p);
        if slot_fires(vco_duty(v, &p), &p) != should_fire {
            return Err(Error::InvalidParams(format!(
                "calibration for theta {t} not reproduced by simulation at level {level}/255"
            )));
        }
    }
    Ok(p)
}
