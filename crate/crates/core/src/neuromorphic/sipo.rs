use crate::{Error, Result};

pub const SIPO_CELLS: usize = 9;

/// Serial-in parallel-out register of nine flip-flops. Cell `k` holds the
/// bit of the `k`-th comparison slot; the cells are read together once the
/// last one is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SipoRegister {
    bits: [bool; SIPO_CELLS],
    filled: usize,
}

impl SipoRegister {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn filled(&self) -> usize {
        self.filled
    }

    pub fn is_full(&self) -> bool {
        self.filled == SIPO_CELLS
    }

    pub fn shift(&mut self, bit: bool) -> Result<()> {
        if self.is_full() {
            return Err(Error::RegisterOverflow(SIPO_CELLS));
        }
        self.bits[self.filled] = bit;
        self.filled += 1;
        Ok(())
    }

    /// Parallel read, available only after the ninth shift.
    pub fn read(&self) -> Option<[bool; SIPO_CELLS]> {
        self.is_full().then_some(self.bits)
    }

    /// Flip-flop states, `None` for cells not yet written.
    pub fn cells(&self) -> [Option<bool>; SIPO_CELLS] {
        std::array::from_fn(|i| (i < self.filled).then_some(self.bits[i]))
    }
}

impl std::fmt::Display for SipoRegister {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in self.cells() {
            f.write_str(match c {
                Some(true) => "1",
                Some(false) => "0",
                None => "-",
            })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_shift() {
        let mut r = SipoRegister::new();
        r.shift(true).unwrap();
        assert_eq!(r.filled(), 1);
        assert_eq!(r.cells()[0], Some(true));
        assert_eq!(r.cells()[1], None);
        assert_eq!(r.read(), None);
        assert_eq!(r.to_string(), "1--------");
    }

    #[test]
    fn nine_shifts_then_overflow() {
        let mut r = SipoRegister::new();
        for i in 0..9 {
            r.shift(i % 2 == 0).unwrap();
        }
        assert!(r.is_full());
        assert_eq!(
            r.read(),
            Some([true, false, true, false, true, false, true, false, true])
        );
        assert!(matches!(r.shift(true), Err(Error::RegisterOverflow(9))));
        assert_eq!(r.filled(), 9);
    }
}
