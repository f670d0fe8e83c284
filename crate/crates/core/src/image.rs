//! Grayscale images with normalized intensities and 3×3 window access.

use crate::{Error, Result};

/// Row-major grayscale image, every intensity in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Image {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!(
                "dimensions must be positive, got {width}x{height}"
            )));
        }
        if data.len() != width * height {
            return Err(Error::InvalidImage(format!(
                "{} samples for a {width}x{height} image",
                data.len()
            )));
        }
        if let Some(i) = data.iter().position(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidImage(format!(
                "intensity {} at index {i} outside [0, 1]",
                data[i]
            )));
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    /// Constant image.
    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    /// Builds an image from `f(x, y)`; values are clamped into `[0, 1]`.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y).clamp(0.0, 1.0));
            }
        }
        Self::new(width, height, data)
    }

    /// Skips validation; callers guarantee the invariants.
    pub(crate) fn from_raw(width: usize, height: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), width * height);
        Self {
            width,
            height,
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    /// Panics when `(x, y)` is out of bounds.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        assert!(
            x < self.width && y < self.height,
            "pixel ({x}, {y}) out of bounds"
        );
        self.data[y * self.width + x]
    }

    pub fn row(&self, y: usize) -> &[f64] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    pub fn same_dims(&self, other: &Image) -> Result<()> {
        if self.width != other.width || self.height != other.height {
            return Err(Error::DimensionMismatch(
                self.width,
                self.height,
                other.width,
                other.height,
            ));
        }
        Ok(())
    }
}

/// How neighbors that fall outside the image are resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum BorderPolicy {
    /// Clamp the coordinate to the nearest edge pixel.
    #[default]
    Replicate,
    /// Reflect about the edge pixel (`-1 -> 1`, `w -> w - 2`).
    Mirror,
    /// Substitute the center value, which is always similar and leaves the
    /// adaptive mean unchanged.
    Skip,
}

impl std::str::FromStr for BorderPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "replicate" => Ok(Self::Replicate),
            "mirror" => Ok(Self::Mirror),
            "skip" => Ok(Self::Skip),
            other => Err(format!("unknown border policy `{other}`")),
        }
    }
}

impl std::fmt::Display for BorderPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Replicate => "replicate",
            Self::Mirror => "mirror",
            Self::Skip => "skip",
        })
    }
}

/// Index of the center pixel inside a [`Window3x3`].
pub const CENTER: usize = 4;

/// A 3×3 neighborhood in row-major order; `values[4]` is the center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window3x3 {
    pub values: [f64; 9],
    pub center_xy: (usize, usize),
}

impl Window3x3 {
    pub fn new(values: [f64; 9]) -> Self {
        Self {
            values,
            center_xy: (0, 0),
        }
    }

    /// Window with `center` at index 4 and `neighbors` filling the other
    /// eight slots in row-major order.
    pub fn from_center_and_neighbors(center: f64, neighbors: [f64; 8]) -> Self {
        let mut values = [0.0; 9];
        values[..CENTER].copy_from_slice(&neighbors[..CENTER]);
        values[CENTER] = center;
        values[CENTER + 1..].copy_from_slice(&neighbors[CENTER..]);
        Self::new(values)
    }

    #[inline]
    pub fn center(&self) -> f64 {
        self.values[CENTER]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[inline]
fn resolve(c: i64, len: usize, policy: BorderPolicy) -> Option<usize> {
    let last = len as i64 - 1;
    if (0..=last).contains(&c) {
        return Some(c as usize);
    }
    match policy {
        BorderPolicy::Replicate => Some(c.clamp(0, last) as usize),
        BorderPolicy::Mirror => {
            let r = if c < 0 { -c } else { 2 * last - c };
            // a single-pixel axis has nothing to reflect onto
            Some(r.clamp(0, last) as usize)
        }
        BorderPolicy::Skip => None,
    }
}

/// Gathers the 3×3 neighborhood around `(x, y)`.
pub fn window_at(img: &Image, x: i64, y: i64, policy: BorderPolicy) -> Result<Window3x3> {
    if x < 0 || y < 0 || x >= img.width as i64 || y >= img.height as i64 {
        return Err(Error::OutOfBounds {
            x,
            y,
            width: img.width,
            height: img.height,
        });
    }
    Ok(window_unchecked(img, x as usize, y as usize, policy))
}

#[inline]
pub(crate) fn window_unchecked(img: &Image, x: usize, y: usize, policy: BorderPolicy) -> Window3x3 {
    let center = img.data[y * img.width + x];
    let mut values = [center; 9];
    let interior = x > 0 && y > 0 && x + 1 < img.width && y + 1 < img.height;
    if interior {
        for (dy, chunk) in values.chunks_exact_mut(3).enumerate() {
            let start = (y + dy - 1) * img.width + x - 1;
            chunk.copy_from_slice(&img.data[start..start + 3]);
        }
    } else {
        for dy in 0..3 {
            let row = resolve(y as i64 + dy as i64 - 1, img.height, policy);
            for dx in 0..3 {
                let col = resolve(x as i64 + dx as i64 - 1, img.width, policy);
                if let (Some(r), Some(c)) = (row, col) {
                    values[dy * 3 + dx] = img.data[r * img.width + c];
                }
            }
        }
    }
    Window3x3 {
        values,
        center_xy: (x, y),
    }
}
