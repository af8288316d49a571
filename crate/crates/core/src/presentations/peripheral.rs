use super::{linking_weights, KnotGroup, PeripheralSystem, PresentationError};
use crate::word::Word;

/// Orientation reversal or mirror image of the knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeripheralTransform {
    /// `(λ, μ) → (λ^-1, μ^-1)`, framing unchanged.
    Reverse,
    /// `(λ, μ) → (λ, μ^-1)`, framing negated.
    Mirror,
}

/// Result of [`transform_peripheral`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformed {
    pub knot: KnotGroup,
    /// The raw linking form gave `lk(μ') = -1` and was flipped so that the new
    /// meridian has linking number `1` again.
    pub renormalized: bool,
}

/// Replaces the longitude by `λ μ^(framing - old)`.
pub fn reframe(k: &KnotGroup, framing: i64) -> KnotGroup {
    let shift = framing - k.peripheral.framing;
    let longitude = k
        .peripheral
        .longitude
        .concat(&k.peripheral.meridian.pow(shift))
        .reduced();
    KnotGroup {
        presentation: k.presentation.clone(),
        peripheral: PeripheralSystem {
            meridian: k.peripheral.meridian.clone(),
            longitude,
            framing,
        },
    }
}

/// Applies a transform to the peripheral pair and re-validates the result.
pub fn transform_peripheral(k: &KnotGroup, t: PeripheralTransform) -> Result<Transformed, PresentationError> {
    let old = linking_weights(&k.presentation, &k.peripheral.meridian)?;
    let p = &k.peripheral;
    let (longitude, framing): (Word, i64) = match t {
        PeripheralTransform::Reverse => (p.longitude.inverse(), p.framing),
        PeripheralTransform::Mirror => (p.longitude.clone(), -p.framing),
    };
    let meridian = p.meridian.inverse();
    let knot = KnotGroup {
        presentation: k.presentation.clone(),
        peripheral: PeripheralSystem {
            meridian,
            longitude,
            framing,
        },
    };
    knot.validate()?;
    let renormalized = old.of(&knot.peripheral.meridian) != 1;
    Ok(Transformed { knot, renormalized })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reframe_shifts_linking_number() {
        let k = KnotGroup::trefoil();
        let f = reframe(&k, 3);
        assert_eq!(f.peripheral.framing, 3);
        assert_eq!(f.validate().unwrap().of(&f.peripheral.longitude), 3);
        assert_eq!(reframe(&f, 0), k);
    }

    #[test]
    fn reverse_and_mirror_renormalize() {
        let k = reframe(&KnotGroup::trefoil(), 2);
        let r = transform_peripheral(&k, PeripheralTransform::Reverse).unwrap();
        assert!(r.renormalized);
        assert_eq!(r.knot.peripheral.framing, 2);
        let m = transform_peripheral(&k, PeripheralTransform::Mirror).unwrap();
        assert!(m.renormalized);
        assert_eq!(m.knot.peripheral.framing, -2);
        let lk = m.knot.validate().unwrap();
        assert_eq!(lk.of(&m.knot.peripheral.meridian), 1);
    }
}
