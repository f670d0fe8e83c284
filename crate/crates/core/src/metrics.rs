//! MSE and PSNR with peak 1.0.

use crate::{Image, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityScore {
    pub mse: f64,
    /// `f64::INFINITY` when the images are identical.
    pub psnr_db: f64,
}

impl QualityScore {
    pub fn from_mse(mse: f64) -> Self {
        Self {
            mse,
            psnr_db: psnr_from_mse(mse),
        }
    }
}

pub fn mse(a: &Image, b: &Image) -> Result<f64> {
    a.same_dims(b)?;
    let sum: f64 = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    Ok(sum / a.len() as f64)
}

#[inline]
pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (1.0 / mse).log10()
    }
}

pub fn psnr(a: &Image, b: &Image) -> Result<f64> {
    mse(a, b).map(psnr_from_mse)
}

pub fn score(a: &Image, b: &Image) -> Result<QualityScore> {
    mse(a, b).map(QualityScore::from_mse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    #[test]
    fn identical_images() {
        let a = Image::new(2, 1, vec![0.2, 0.7]).unwrap();
        assert_eq!(mse(&a, &a).unwrap(), 0.0);
        assert_eq!(psnr(&a, &a).unwrap(), f64::INFINITY);
    }

    #[test]
    fn extremes() {
        let a = Image::filled(3, 3, 0.0).unwrap();
        let b = Image::filled(3, 3, 1.0).unwrap();
        assert_eq!(mse(&a, &b).unwrap(), 1.0);
        assert_eq!(psnr(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn small_example() {
        let a = Image::new(2, 1, vec![0.0, 0.5]).unwrap();
        let b = Image::new(2, 1, vec![0.1, 0.5]).unwrap();
        assert!((mse(&a, &b).unwrap() - 0.005).abs() < 1e-15);
        assert_eq!(mse(&a, &b).unwrap(), mse(&b, &a).unwrap());
    }

    #[test]
    fn psnr_closed_form() {
        assert!((psnr_from_mse(0.01) - 20.0).abs() < 1e-12);
        assert!(psnr_from_mse(0.002) > psnr_from_mse(0.003));
    }

    #[test]
    fn dimension_mismatch() {
        let a = Image::filled(2, 1, 0.0).unwrap();
        let b = Image::filled(1, 2, 0.0).unwrap();
        assert!(matches!(
            mse(&a, &b),
            Err(Error::DimensionMismatch(2, 1, 1, 2))
        ));
        assert!(psnr(&a, &b).is_err());
    }
}
