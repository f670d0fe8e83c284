use super::analog::{diff_amp, vco_duty};
use super::neuron::{normalize_neuron_output, run_slot};
use super::sipo::SipoRegister;
use super::trace::{NeuronTrace, TraceSample, TraceSink};
use super::AnalogParams;
use crate::filters::gated_mean;
use crate::image::CENTER;
use crate::{Error, Result, SimilarityMask, Window3x3};

/// Window index compared in each slot: the center against itself first,
/// then the eight neighbors in row-major order.
pub const COMPARISON_ORDER: [usize; 9] = [CENTER, 0, 1, 2, 3, 5, 6, 7, 8];

/// Per-slot summary of a pipeline run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotReport {
    /// 1 to 9.
    pub slot: usize,
    /// Row-major window index compared in this slot.
    pub pixel: usize,
    pub v_diff: f64,
    pub duty: f64,
    pub fired: bool,
    /// Seconds since the start of the first slot.
    pub fire_time: Option<f64>,
    /// Register contents after the slot's closing clock edge.
    pub register: SipoRegister,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutcome {
    /// Register bits reordered to row-major window order.
    pub mask: SimilarityMask,
    pub output: f64,
    pub slots: Vec<SlotReport>,
    /// Instant the register is read and the averaging output becomes valid.
    pub readout_time: f64,
}

/// Switched averaging: mean of the window pixels whose gate is set.
pub fn averaging_circuit(w: &Window3x3, gates: &[bool; 9]) -> Result<f64> {
    gated_mean(&w.values, gates).ok_or(Error::DegenerateMask)
}

/// Runs the nine comparison slots for one window, streaming every
/// `stride`-th step (and the final readout sample) into `sink`.
pub fn run_window_pipeline_into(
    w: &Window3x3,
    params: &AnalogParams,
    stride: usize,
    sink: &mut dyn TraceSink,
) -> Result<PipelineOutcome> {
    params.validate()?;
    let stride = stride.max(1);
    let steps = params.steps_per_slot();
    let clk_from = ((1.0 - params.clk_duty) * steps as f64).round() as usize;
    let center = w.center();

    let mut register = SipoRegister::new();
    let mut slots = Vec::with_capacity(9);
    let mut sink_err = None;
    let mut last_v_diff = 0.0;
    let mut last_charge = 0.0;
    let mut last_fired = false;

    for (k, &pixel) in COMPARISON_ORDER.iter().enumerate() {
        let v_diff = diff_amp(center, w.values[pixel], params);
        let duty = vco_duty(v_diff, params);
        let slot_start = k * steps;
        let state = run_slot(duty, params, |n, s| {
            let global = slot_start + n;
            if global % stride != 0 || sink_err.is_some() {
                return;
            }
            let sample = TraceSample {
                time: global as f64 * params.dt,
                slot: k + 1,
                v_diff,
                vco_out: s.vco_out,
                charge: s.charge,
                neuron_out: s.neuron_out,
                clk: n >= clk_from,
                avg_out: None,
            };
            if let Err(e) = sink.record(&sample) {
                sink_err = Some(e);
            }
        });
        if let Some(e) = sink_err {
            return Err(e);
        }
        let fired = normalize_neuron_output(&state);
        register.shift(fired)?;
        slots.push(SlotReport {
            slot: k + 1,
            pixel,
            v_diff,
            duty,
            fired,
            fire_time: state.fire_time.map(|t| slot_start as f64 * params.dt + t),
            register,
        });
        last_v_diff = v_diff;
        last_charge = state.charge;
        last_fired = state.fired;
    }

    let bits = register.read().expect("nine slots fill the register");
    let mut row_major = [false; 9];
    for (k, &pixel) in COMPARISON_ORDER.iter().enumerate() {
        row_major[pixel] = bits[k];
    }
    let output = averaging_circuit(w, &row_major)?;
    let mask = SimilarityMask::from_bits(row_major)?;

    // the ninth slot's closing clock edge latches the last bit and the
    // register is read at that instant
    let end = 9 * steps;
    let readout_time = end as f64 * params.dt;
    sink.record(&TraceSample {
        time: readout_time,
        slot: 9,
        v_diff: last_v_diff,
        vco_out: false,
        charge: last_charge,
        neuron_out: last_fired,
        clk: false,
        avg_out: Some(output),
    })?;

    Ok(PipelineOutcome {
        mask,
        output,
        slots,
        readout_time,
    })
}

/// Runs the pipeline and collects every `stride`-th sample in memory.
///
/// A full-resolution trace at the default 50 Hz clock holds 1.8 million
/// samples; pass a larger stride when only the timing shape is needed.
pub fn run_window_pipeline(
    w: &Window3x3,
    params: &AnalogParams,
    stride: usize,
) -> Result<(PipelineOutcome, NeuronTrace)> {
    let mut trace = NeuronTrace::default();
    let outcome = run_window_pipeline_into(w, params, stride, &mut trace)?;
    Ok((outcome, trace))
}
