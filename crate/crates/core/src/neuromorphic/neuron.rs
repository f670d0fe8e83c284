use super::analog::{vco_high_time, vco_level, vco_time_for_high};
use super::AnalogParams;

/// Integrate-and-fire neuron at the end of a slot.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NeuronState {
    /// Accumulated charge, volts. Held at `v_ref` once fired.
    pub charge: f64,
    pub fired: bool,
    /// Slot-local firing instant, seconds.
    pub fire_time: Option<f64>,
}

/// One simulation step inside a slot, sampled at the step start.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotSample {
    /// Slot-local time, seconds.
    pub time: f64,
    pub vco_out: bool,
    pub charge: f64,
    pub neuron_out: bool,
}

/// Steps one comparison slot, calling `on_sample(step, sample)` at the
/// start of every step before it is integrated.
///
/// The neuron charges at `charge_rate` while the VCO square wave is high.
/// The high time inside each step is integrated exactly, so the total charge
/// delivered over the slot is `charge_rate * duty * slot_duration` regardless
/// of `dt`; only the reported fire instant depends on the step grid, and it
/// is located exactly inside the step where the threshold is crossed.
pub(crate) fn run_slot(
    duty: f64,
    params: &AnalogParams,
    mut on_sample: impl FnMut(usize, &SlotSample),
) -> NeuronState {
    let steps = params.steps_per_slot();
    let f = params.f_sine;
    let mut state = NeuronState::default();
    let mut high_prev = 0.0;
    for n in 0..steps {
        let t0 = n as f64 * params.dt;
        on_sample(
            n,
            &SlotSample {
                time: t0,
                vco_out: vco_level(t0, duty, f),
                charge: state.charge,
                neuron_out: state.fired,
            },
        );
        if state.fired {
            continue;
        }
        let t1 = (n + 1) as f64 * params.dt;
        let high_next = vco_high_time(t1, duty, f);
        let gained = params.charge_rate * (high_next - high_prev);
        if state.charge + gained >= params.v_ref {
            let needed = (params.v_ref - state.charge) / params.charge_rate;
            let t_fire = vco_time_for_high(high_prev + needed, duty, f).clamp(t0, t1);
            state.charge = params.v_ref;
            state.fired = true;
            state.fire_time = Some(t_fire);
        } else {
            state.charge += gained;
        }
        high_prev = high_next;
    }
    state
}

/// Simulates one slot driven by a VCO of the given duty cycle. Returns the
/// final neuron state and every `stride`-th step sample.
pub fn simulate_neuron_slot(
    duty: f64,
    params: &AnalogParams,
    stride: usize,
) -> (NeuronState, Vec<SlotSample>) {
    let stride = stride.max(1);
    let mut samples = Vec::with_capacity(params.steps_per_slot() / stride + 1);
    let state = run_slot(duty.clamp(0.0, 1.0), params, |n, s| {
        if n % stride == 0 {
            samples.push(*s);
        }
    });
    (state, samples)
}

/// Whether a slot at this duty cycle fires, without recording samples.
pub fn slot_fires(duty: f64, params: &AnalogParams) -> bool {
    run_slot(duty.clamp(0.0, 1.0), params, |_, _| {}).fired
}

/// DC conversion and normalization of the spike train: 1 iff fired.
pub fn normalize_neuron_output(state: &NeuronState) -> bool {
    state.fired
}
