use std::sync::Arc;

/// An unsigned `width x width -> 2·width` multiplier.
pub trait Multiplier: Send + Sync {
    fn name(&self) -> &str;

    /// Operand width in bits.
    fn width(&self) -> u32;

    /// Product of `a` and `b`; operands must be below `2^width`.
    fn mul(&self, a: u64, b: u64) -> u64;

    /// Transistor area of the adder cells (AND gates and ideal final
    /// summations are not counted).
    fn area(&self) -> u64;
}

impl<M: Multiplier + ?Sized> Multiplier for Arc<M> {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn width(&self) -> u32 {
        (**self).width()
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        (**self).mul(a, b)
    }
    fn area(&self) -> u64 {
        (**self).area()
    }
}

impl<M: Multiplier + ?Sized> Multiplier for Box<M> {
    fn name(&self) -> &str {
        (**self).name()
    }
    fn width(&self) -> u32 {
        (**self).width()
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        (**self).mul(a, b)
    }
    fn area(&self) -> u64 {
        (**self).area()
    }
}

/// Integer reference multiplier.
#[derive(Clone, Debug)]
pub struct ExactMultiplier {
    width: u32,
    name: String,
}

impl ExactMultiplier {
    pub fn new(width: u32) -> Self {
        assert!((1..=32).contains(&width), "width {width} out of range");
        ExactMultiplier {
            width,
            name: format!("exact{width}"),
        }
    }
}

impl Multiplier for ExactMultiplier {
    fn name(&self) -> &str {
        &self.name
    }
    fn width(&self) -> u32 {
        self.width
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b
    }
    fn area(&self) -> u64 {
        0
    }
}

/// Mask of the low `bits` bits.
#[inline]
pub(crate) fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}
