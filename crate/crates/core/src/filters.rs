//! Software filters: the similarity-gated adaptive mean and the conventional
//! 3×3 mean and median baselines.

use rayon::prelude::*;

use crate::image::{window_unchecked, CENTER};
use crate::{BorderPolicy, Error, Image, Result, Window3x3};

/// Similarity threshold in normalized intensity units.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Threshold(f64);

impl Threshold {
    pub fn new(theta: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&theta) {
            Ok(Self(theta))
        } else {
            Err(Error::InvalidThreshold(theta))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for Threshold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Binary gate per window position; `false` is the null entry that drops a
/// pixel out of the mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimilarityMask {
    bits: [bool; 9],
}

impl SimilarityMask {
    /// Every pixel active.
    pub const FULL: Self = Self { bits: [true; 9] };

    /// The center gate must be set: a pixel is always similar to itself.
    pub fn from_bits(bits: [bool; 9]) -> Result<Self> {
        if !bits[CENTER] {
            return Err(Error::InvalidMask("center bit is unset".into()));
        }
        Ok(Self { bits })
    }

    pub fn bits(&self) -> [bool; 9] {
        self.bits
    }

    /// Number of active pixels, always in `1..=9`.
    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// `true` where `self` is active only if `other` is too.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits.iter().zip(other.bits).all(|(&a, b)| !a || b)
    }
}

impl std::fmt::Display for SimilarityMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Gate each pixel on `|value - center| <= theta`.
#[inline]
pub fn similarity_mask(w: &Window3x3, theta: Threshold) -> SimilarityMask {
    let c = w.center();
    let mut bits = [false; 9];
    for (b, &v) in bits.iter_mut().zip(&w.values) {
        *b = (v - c).abs() <= theta.0;
    }
    SimilarityMask { bits }
}

/// Mean of the gated values, `None` when no gate is set.
///
/// Accumulated as deviations from the first active value, so a set of equal
/// values averages to exactly that value.
#[inline]
pub(crate) fn gated_mean(values: &[f64; 9], gates: &[bool; 9]) -> Option<f64> {
    let first = gates.iter().position(|&g| g)?;
    let reference = values[first];
    let mut dev = 0.0;
    let mut n = 0usize;
    for (&v, &g) in values.iter().zip(gates) {
        if g {
            dev += v - reference;
            n += 1;
        }
    }
    Some(reference + dev / n as f64)
}

/// Mean of the mask-active pixels with weight `1/n`.
#[inline]
pub fn adaptive_mean(w: &Window3x3, m: &SimilarityMask) -> f64 {
    gated_mean(&w.values, &m.bits).expect("mask has the center bit set")
}

#[inline]
fn box_mean(w: &Window3x3) -> f64 {
    adaptive_mean(w, &SimilarityMask::FULL)
}

#[inline]
fn median9(w: &Window3x3) -> f64 {
    let mut v = w.values;
    v.sort_unstable_by(f64::total_cmp);
    v[CENTER]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FilterKind {
    Mean,
    Median,
    AdaptiveMean(Threshold),
}

impl FilterKind {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Mean => "mean",
            Self::Median => "median",
            Self::AdaptiveMean(_) => "adaptive",
        }
    }

    pub fn theta(&self) -> Option<Threshold> {
        match self {
            Self::AdaptiveMean(t) => Some(*t),
            _ => None,
        }
    }

    /// Filter response for one window, before clamping.
    #[inline]
    pub fn apply(&self, w: &Window3x3) -> f64 {
        match self {
            Self::Mean => box_mean(w),
            Self::Median => median9(w),
            Self::AdaptiveMean(t) => adaptive_mean(w, &similarity_mask(w, *t)),
        }
    }
}

/// Filters every pixel; output has the input's dimensions.
pub fn filter_image(img: &Image, kind: FilterKind, policy: BorderPolicy) -> Image {
    let width = img.width();
    let mut out = vec![0.0; img.len()];
    out.par_chunks_mut(width).enumerate().for_each(|(y, row)| {
        for (x, px) in row.iter_mut().enumerate() {
            let w = window_unchecked(img, x, y, policy);
            *px = kind.apply(&w).clamp(0.0, 1.0);
        }
    });
    Image::from_raw(width, img.height(), out)
}
