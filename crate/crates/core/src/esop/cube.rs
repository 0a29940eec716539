//! Ternary product terms.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Maximum number of variables a [`Cube`] can carry.
pub const MAX_VARS: usize = 64;

/// One position of a cube.
///
/// The derived ordering is `Zero < DontCare < One`, which is also the order
/// children of a ternary node are visited in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trit {
    Zero,
    DontCare,
    One,
}

impl Trit {
    pub const ALL: [Trit; 3] = [Trit::Zero, Trit::DontCare, Trit::One];

    /// Child slot in a ternary node (`lo`, `dc`, `hi`).
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Trit {
        Trit::ALL[i]
    }

    pub fn as_char(self) -> char {
        match self {
            Trit::Zero => '0',
            Trit::DontCare => '-',
            Trit::One => '1',
        }
    }

    pub fn from_char(c: char) -> Option<Trit> {
        match c {
            '0' => Some(Trit::Zero),
            '-' => Some(Trit::DontCare),
            '1' => Some(Trit::One),
            _ => None,
        }
    }
}

/// A product term over up to [`MAX_VARS`] variables.
///
/// Every variable takes two bits: a care bit and a value bit. Symbol `i`
/// lives at bit `len - 1 - i`, so symbol 0 is the most significant bit and
/// a minterm's value mask equals the integer it encodes.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cube {
    care: u64,
    value: u64,
    len: u8,
}

impl Cube {
    /// The cube with every symbol a don't-care.
    pub fn universe(len: usize) -> Cube {
        assert!(len <= MAX_VARS, "cube length {len} exceeds {MAX_VARS}");
        Cube {
            care: 0,
            value: 0,
            len: len as u8,
        }
    }

    /// The minterm whose bits spell `index`, most significant symbol first.
    pub fn minterm(len: usize, index: u64) -> Cube {
        assert!(len <= MAX_VARS, "cube length {len} exceeds {MAX_VARS}");
        let mask = low_mask(len);
        Cube {
            care: mask,
            value: index & mask,
            len: len as u8,
        }
    }

    pub fn from_trits(trits: &[Trit]) -> Result<Cube> {
        if trits.len() > MAX_VARS {
            return Err(Error::MalformedCover(format!(
                "cube has {} symbols, limit is {MAX_VARS}",
                trits.len()
            )));
        }
        let mut cube = Cube::universe(trits.len());
        for (i, &t) in trits.iter().enumerate() {
            cube.set(i, t);
        }
        Ok(cube)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn bit(&self, i: usize) -> u64 {
        debug_assert!(i < self.len());
        1u64 << (self.len() - 1 - i)
    }

    #[inline]
    pub fn get(&self, i: usize) -> Trit {
        let b = self.bit(i);
        if self.care & b == 0 {
            Trit::DontCare
        } else if self.value & b == 0 {
            Trit::Zero
        } else {
            Trit::One
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, t: Trit) {
        let b = self.bit(i);
        match t {
            Trit::Zero => {
                self.care |= b;
                self.value &= !b;
            }
            Trit::DontCare => {
                self.care &= !b;
                self.value &= !b;
            }
            Trit::One => {
                self.care |= b;
                self.value |= b;
            }
        }
    }

    /// Appends a symbol after the last position.
    pub fn push(&mut self, t: Trit) {
        assert!(self.len() < MAX_VARS, "cube length exceeds {MAX_VARS}");
        self.care <<= 1;
        self.value <<= 1;
        self.len += 1;
        self.set(self.len() - 1, t);
    }

    pub fn trits(&self) -> impl Iterator<Item = Trit> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    /// Mask of cared-for positions; symbol `i` at bit `len - 1 - i`.
    #[inline]
    pub fn care_mask(&self) -> u64 {
        self.care
    }

    /// Required values on the cared-for positions.
    #[inline]
    pub fn value_mask(&self) -> u64 {
        self.value
    }

    /// Number of symbols that are not don't-cares.
    #[inline]
    pub fn literal_count(&self) -> usize {
        self.care.count_ones() as usize
    }

    /// Whether the assignment encoded as an integer (symbol 0 is the most
    /// significant bit) satisfies every literal of the cube.
    #[inline]
    pub fn matches(&self, assignment: u64) -> bool {
        assignment & self.care == self.value
    }

    /// Cyclic left shift by one symbol: `c[1..] + c[0]`.
    pub fn rotate_left(&self) -> Cube {
        let n = self.len();
        if n == 0 {
            return *self;
        }
        let mask = low_mask(n);
        let rot = |x: u64| ((x << 1) | (x >> (n - 1))) & mask;
        Cube {
            care: rot(self.care),
            value: rot(self.value),
            len: self.len,
        }
    }
}

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.trits() {
            write!(f, "{}", t.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cube({self})")
    }
}

impl FromStr for Cube {
    type Err = Error;

    fn from_str(s: &str) -> Result<Cube> {
        let trits = s
            .chars()
            .map(|c| {
                Trit::from_char(c).ok_or_else(|| Error::MalformedCover(format!("invalid cube symbol {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Cube::from_trits(&trits)
    }
}

impl PartialOrd for Cube {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Symbol-wise lexicographic order with `0 < - < 1`, shorter cubes first.
impl Ord for Cube {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len.cmp(&other.len).then_with(|| self.trits().cmp(other.trits()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let c: Cube = "0-1".parse().unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.get(0), Trit::Zero);
        assert_eq!(c.get(1), Trit::DontCare);
        assert_eq!(c.get(2), Trit::One);
        assert_eq!(c.to_string(), "0-1");
        assert!("0x1".parse::<Cube>().is_err());
    }

    #[test]
    fn minterm_encodes_index_msb_first() {
        assert_eq!(Cube::minterm(2, 0b10).to_string(), "10");
        assert_eq!(Cube::minterm(4, 0b0011).to_string(), "0011");
    }

    #[test]
    fn matching() {
        let c: Cube = "1-0".parse().unwrap();
        assert!(c.matches(0b100));
        assert!(c.matches(0b110));
        assert!(!c.matches(0b101));
        assert!(!c.matches(0b000));
        assert!(Cube::universe(3).matches(0b111));
    }

    #[test]
    fn rotate_left_moves_first_symbol_to_end() {
        let c: Cube = "10-".parse().unwrap();
        assert_eq!(c.rotate_left().to_string(), "0-1");
        assert_eq!(Cube::universe(0).rotate_left(), Cube::universe(0));
    }

    #[test]
    fn push_appends() {
        let mut c: Cube = "-1".parse().unwrap();
        c.push(Trit::Zero);
        assert_eq!(c.to_string(), "-10");
    }

    #[test]
    fn full_width_cube() {
        let mut c = Cube::universe(64);
        c.set(0, Trit::One);
        c.set(63, Trit::Zero);
        assert_eq!(c.get(0), Trit::One);
        assert_eq!(c.get(63), Trit::Zero);
        assert_eq!(c.rotate_left().get(62), Trit::Zero);
        assert_eq!(c.rotate_left().get(63), Trit::One);
    }

    #[test]
    fn ordering_is_zero_dc_one() {
        let mut v: Vec<Cube> = ["1-", "0-", "-1", "00"].iter().map(|s| s.parse().unwrap()).collect();
        v.sort();
        let s: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        assert_eq!(s, ["00", "0-", "-1", "1-"]);
    }
}
