use std::io::Write;

use crate::format::csv_num;
use crate::Result;

pub const TRACE_HEADER: [&str; 8] = [
    "time_s",
    "slot",
    "v_diff_v",
    "vco_out",
    "charge_v",
    "neuron_out",
    "clk",
    "avg_out",
];

/// One row of the pipeline timing diagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceSample {
    /// Seconds since the start of the first slot.
    pub time: f64,
    /// Comparison slot, 1 to 9.
    pub slot: usize,
    pub v_diff: f64,
    pub vco_out: bool,
    pub charge: f64,
    pub neuron_out: bool,
    pub clk: bool,
    /// Averaging-circuit output; unset until the register is read.
    pub avg_out: Option<f64>,
}

pub trait TraceSink {
    fn record(&mut self, sample: &TraceSample) -> Result<()>;
}

/// Discards every sample.
#[derive(Debug, Default, Clone, Copy)]
pub struct NullSink;

impl TraceSink for NullSink {
    fn record(&mut self, _: &TraceSample) -> Result<()> {
        Ok(())
    }
}

/// In-memory trace.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NeuronTrace {
    pub samples: Vec<TraceSample>,
}

impl NeuronTrace {
    /// First instant at which the averaging output is set.
    pub fn avg_activation_time(&self) -> Option<f64> {
        self.samples
            .iter()
            .find(|s| s.avg_out.is_some())
            .map(|s| s.time)
    }

    pub fn duration(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.time)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = CsvTraceWriter::new(out)?;
        for s in &self.samples {
            w.record(s)?;
        }
        w.finish()
    }
}

impl TraceSink for NeuronTrace {
    fn record(&mut self, sample: &TraceSample) -> Result<()> {
        self.samples.push(*sample);
        Ok(())
    }
}

/// Streams samples as CSV rows under [`TRACE_HEADER`].
pub struct CsvTraceWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> CsvTraceWriter<W> {
    pub fn new(out: W) -> Result<Self> {
        let mut inner = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        inner.write_record(TRACE_HEADER)?;
        Ok(Self { inner })
    }

    pub fn finish(mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

fn bit(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

impl<W: Write> TraceSink for CsvTraceWriter<W> {
    fn record(&mut self, s: &TraceSample) -> Result<()> {
        self.inner.write_record([
            csv_num(s.time).as_str(),
            s.slot.to_string().as_str(),
            csv_num(s.v_diff).as_str(),
            bit(s.vco_out),
            csv_num(s.charge).as_str(),
            bit(s.neuron_out),
            bit(s.clk),
            s.avg_out.map(csv_num).unwrap_or_default().as_str(),
        ])?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let trace = NeuronTrace {
            samples: vec![
                TraceSample {
                    time: 0.0,
                    slot: 1,
                    v_diff: 0.0,
                    vco_out: true,
                    charge: 0.0,
                    neuron_out: false,
                    clk: false,
                    avg_out: None,
                },
                TraceSample {
                    time: 0.18,
                    slot: 9,
                    v_diff: 0.9,
                    vco_out: false,
                    charge: 1.12,
                    neuron_out: true,
                    clk: true,
                    avg_out: Some(0.5),
                },
            ],
        };
        let mut out = Vec::new();
        trace.write_csv(&mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "time_s,slot,v_diff_v,vco_out,charge_v,neuron_out,clk,avg_out\n\
             0,1,0,1,0,0,0,\n\
             0.18,9,0.9,0,1.12,1,1,0.5\n"
        );
        assert_eq!(trace.avg_activation_time(), Some(0.18));
        assert_eq!(trace.duration(), 0.18);
    }
}
