//! Prime fields with p < 2^32 on machine words. Makes the same canonical
//! choices as [`FieldCtx`] (least non-residue, smaller root) and exists only
//! to make exhaustive surveys cheap.

use num_traits::ToPrimitive;

use super::FieldCtx;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallPrimeField {
    p: u64,
    half_order: u64,
    odd_part: u64,
    two_adicity: u32,
    nonresidue: u64,
}

impl SmallPrimeField {
    /// Word-sized view of a validated prime field; `None` for extensions or
    /// p >= 2^32.
    pub fn from_ctx(ctx: &FieldCtx) -> Option<Self> {
        if ctx.m() != 1 {
            return None;
        }
        let p = ctx.p().to_u64().filter(|&p| p < 1 << 32)?;
        let two_adicity = (p - 1).trailing_zeros();
        let mut field = SmallPrimeField {
            p,
            half_order: (p - 1) / 2,
            odd_part: (p - 1) >> two_adicity,
            two_adicity,
            nonresidue: 0,
        };
        field.nonresidue = (1..p).find(|&v| field.legendre(v) == -1).expect("odd prime");
        Some(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        (x + y) % self.p
    }

    pub fn sub(&self, x: u64, y: u64) -> u64 {
        (x + self.p - y) % self.p
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        x * y % self.p
    }

    pub fn neg(&self, x: u64) -> u64 {
        (self.p - x) % self.p
    }

    pub fn pow(&self, x: u64, mut e: u64) -> u64 {
        let (mut base, mut acc) = (x % self.p, 1 % self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: u64) -> Option<u64> {
        (x != 0).then(|| self.pow(x, self.p - 2))
    }

    pub fn legendre(&self, x: u64) -> i8 {
        match self.pow(x, self.half_order) {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    /// Tonelli–Shanks with the canonical (smaller) root.
    pub fn sqrt(&self, x: u64) -> Option<u64> {
        match self.legendre(x) {
            0 => return Some(0),
            -1 => return None,
            _ => {}
        }
        let mut m = self.two_adicity;
        let mut c = self.pow(self.nonresidue, self.odd_part);
        let mut t = self.pow(x, self.odd_part);
        let mut r = self.pow(x, self.odd_part.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut probe = t;
            while probe != 1 {
                probe = self.mul(probe, probe);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul(b, b);
            }
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r.min(self.neg(r)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;

    #[test]
    fn agrees_with_field_ctx() {
        for p in [3u32, 5, 7, 13, 17, 41, 97, 101, 257] {
            let ctx = FieldCtx::new(FieldSpec::prime(p)).unwrap();
            let small = SmallPrimeField::from_ctx(&ctx).unwrap();
            assert_eq!(ctx.find_nonresidue(), ctx.from_u64(small.nonresidue));
            for x in 0..u64::from(p) {
                let fx = ctx.from_u64(x);
                assert_eq!(small.legendre(x), ctx.legendre(&fx));
                assert_eq!(small.sqrt(x).map(|r| ctx.from_u64(r)), ctx.sqrt(&fx));
                if x > 0 {
                    assert_eq!(ctx.from_u64(small.inv(x).unwrap()), ctx.inv(&fx).unwrap());
                }
            }
        }
    }

    #[test]
    fn rejects_extensions_and_wide_primes() {
        let f9 = FieldCtx::new("3^2:1,0,1".parse().unwrap()).unwrap();
        assert!(SmallPrimeField::from_ctx(&f9).is_none());
        let wide = FieldCtx::new(FieldSpec::prime(4_294_967_311u64)).unwrap();
        assert!(SmallPrimeField::from_ctx(&wide).is_none());
    }
}
