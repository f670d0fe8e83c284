//! Netpbm grayscale (PGM) reading and writing.
//!
//! Reads binary `P5` and ASCII `P2` with `maxval <= 255`; writes `P5`.

use crate::{Error, Image, Result};

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Pgm {
        offset,
        reason: reason.into(),
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(if self.pos >= self.bytes.len() {
                err(self.pos, format!("unexpected end of data reading {what}"))
            } else {
                err(self.pos, format!("expected decimal {what}"))
            });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err(start, format!("{what} does not fit in 32 bits")))
    }
}

/// Parses a P5 or P2 grayscale image, normalizing by `maxval`.
pub fn load_pgm(bytes: &[u8]) -> Result<Image> {
    let binary = match bytes.get(..2) {
        Some(b"P5") => true,
        Some(b"P2") => false,
        Some(_) => return Err(err(0, "magic number is not P5 or P2")),
        None => return Err(err(0, "missing magic number")),
    };
    let mut cur = Cursor { bytes, pos: 2 };
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    cur.skip_whitespace_and_comments();
    let maxval_at = cur.pos;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(err(maxval_at, format!("zero dimension {width}x{height}")));
    }
    if maxval == 0 {
        return Err(err(maxval_at, "maxval is 0"));
    }
    if maxval > 255 {
        return Err(err(
            maxval_at,
            format!("maxval {maxval} exceeds 255 (16-bit PGM unsupported)"),
        ));
    }
    let n = width
        .checked_mul(height)
        .ok_or_else(|| err(maxval_at, "image dimensions overflow"))?;
    let scale = f64::from(maxval);
    let mut data = Vec::with_capacity(n);

    if binary {
        // exactly one whitespace byte separates maxval from the raster
        match bytes.get(cur.pos) {
            Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
            Some(_) => return Err(err(cur.pos, "expected whitespace after maxval")),
            None => return Err(err(cur.pos, "truncated before raster")),
        }
        let raster = &bytes[cur.pos..];
        if raster.len() < n {
            return Err(err(
                bytes.len(),
                format!("truncated raster: {} of {n} bytes", raster.len()),
            ));
        }
        for (i, &b) in raster[..n].iter().enumerate() {
            if u32::from(b) > maxval {
                return Err(err(
                    cur.pos + i,
                    format!("sample {b} exceeds maxval {maxval}"),
                ));
            }
            data.push(f64::from(b) / scale);
        }
    } else {
        for _ in 0..n {
            cur.skip_whitespace_and_comments();
            let at = cur.pos;
            let v = cur.number("sample")?;
            if v > maxval {
                return Err(err(at, format!("sample {v} exceeds maxval {maxval}")));
            }
            data.push(f64::from(v) / scale);
        }
    }
    Image::new(width, height, data)
}

/// Quantizes one intensity to `0..=maxval`, rounding half up.
#[inline]
pub fn quantize(v: f64, maxval: u8) -> u8 {
    let m = f64::from(maxval);
    (v * m).round().clamp(0.0, m) as u8
}

/// Serializes as binary P5 with the given `maxval`.
pub fn save_pgm(img: &Image, maxval: u8) -> Result<Vec<u8>> {
    if maxval == 0 {
        return Err(Error::InvalidImage("maxval must be positive".into()));
    }
    let header = format!("P5\n{} {}\n{}\n", img.width(), img.height(), maxval);
    let mut out = Vec::with_capacity(header.len() + img.len());
    out.extend_from_slice(header.as_bytes());
    out.extend(img.data().iter().map(|&v| quantize(v, maxval)));
    Ok(out)
}

pub fn read_pgm_file(path: impl AsRef<std::path::Path>) -> Result<Image> {
    load_pgm(&std::fs::read(path)?)
}

pub fn write_pgm_file(path: impl AsRef<std::path::Path>, img: &Image) -> Result<()> {
    std::fs::write(path, save_pgm(img, 255)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn payload(bytes: &[u8], n: usize) -> &[u8] {
        &bytes[bytes.len() - n..]
    }

    #[test]
    fn p5_extremes() {
        let img = load_pgm(b"P5 2 1 255 \x00\xff").unwrap();
        assert_eq!((img.width(), img.height()), (2, 1));
        assert_eq!(img.data(), &[0.0, 1.0]);
    }

    #[test]
    fn p5_midpoint() {
        let img = load_pgm(b"P5\n1 1\n255\n\x80").unwrap();
        assert_eq!(img.data(), &[128.0 / 255.0]);
    }

    #[test]
    fn p2_with_comments() {
        let img = load_pgm(b"P2\n# a comment\n3 1 # trailing\n4\n0 2\n4\n").unwrap();
        assert_eq!(img.data(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn save_quantizes_half_up() {
        let one = Image::new(1, 1, vec![1.0]).unwrap();
        assert_eq!(payload(&save_pgm(&one, 255).unwrap(), 1), &[255]);
        let half = Image::new(1, 1, vec![0.5]).unwrap();
        assert_eq!(payload(&save_pgm(&half, 255).unwrap(), 1), &[128]);
        let zeros = Image::filled(2, 2, 0.0).unwrap();
        let out = save_pgm(&zeros, 255).unwrap();
        assert_eq!(out, b"P5\n2 2\n255\n\0\0\0\0");
    }

    #[test]
    fn save_respects_maxval() {
        let img = Image::new(3, 1, vec![0.0, 0.5, 1.0]).unwrap();
        let out = save_pgm(&img, 4).unwrap();
        assert_eq!(out, b"P5\n3 1\n4\n\x00\x02\x04");
    }

    #[test]
    fn errors_name_offsets() {
        let cases: [(&[u8], usize); 7] = [
            (b"", 0),
            (b"P6 1 1 255 \0", 0),
            (b"P5 1 1 0 \0", 7),
            (b"P5 1 1 65535 \0\0", 7),
            (b"P5 2 2 255 \0\0", 13),
            (b"P5 x 1 255 \0", 3),
            (b"P2 2 1 3 1 9", 11),
        ];
        for (bytes, offset) in cases {
            match load_pgm(bytes) {
                Err(Error::Pgm { offset: o, .. }) => assert_eq!(o, offset, "{bytes:?}"),
                other => panic!("{bytes:?}: expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn truncated_header() {
        assert!(matches!(load_pgm(b"P5 1"), Err(Error::Pgm { .. })));
        assert!(matches!(load_pgm(b"P5 1 1 255"), Err(Error::Pgm { .. })));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn payload_round_trips(w in 1usize..20, h in 1usize..20, seed in any::<u64>()) {
                let mut state = seed;
                let raster: Vec<u8> = (0..w * h)
                    .map(|_| {
                        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        (state >> 56) as u8
                    })
                    .collect();
                let mut file = format!("P5\n{w} {h}\n255\n").into_bytes();
                file.extend_from_slice(&raster);
                let img = load_pgm(&file).unwrap();
                prop_assert_eq!(save_pgm(&img, 255).unwrap(), file);
            }
        }
    }
}
