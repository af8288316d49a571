mod common;

use std::sync::Arc;

use common::{random_word, rng, trefoil_ring};
use knotcord::group_ring::{GroupRing, GroupRingElement, LaurentPoly};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_element(r: &mut ChaCha8Rng, ring: &Arc<GroupRing>) -> GroupRingElement {
    let n = r.random_range(0..4);
    let terms: Vec<_> = (0..n).map(|_| (random_word(r, 2, 6), r.random_range(-3..=3))).collect();
    GroupRingElement::from_terms(ring, terms).unwrap()
}

#[test]
fn ring_axioms_on_random_elements() {
    let ring = trefoil_ring();
    let mut r = rng(21);
    let one = GroupRingElement::one(&ring);
    for _ in 0..100 {
        let (a, b, c) = (random_element(&mut r, &ring), random_element(&mut r, &ring), random_element(&mut r, &ring));
        assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        assert_eq!(a.mul(&one).unwrap(), a);
        assert!(a.sub(&a).unwrap().is_zero());
    }
}

#[test]
fn lk_split_partitions_terms() {
    let ring = trefoil_ring();
    let mut r = rng(22);
    for _ in 0..50 {
        let a = random_element(&mut r, &ring);
        let parts = a.lk_split().unwrap();
        let mut total = GroupRingElement::zero(&ring);
        for (level, p) in &parts {
            for (w, _) in p.terms() {
                assert_eq!(ring.lk(w).unwrap(), *level);
            }
            total = total.add(p).unwrap();
        }
        assert_eq!(total, a);
    }
}

#[test]
fn pairs_round_trip() {
    let ring = trefoil_ring();
    let mut r = rng(23);
    for _ in 0..50 {
        let a = random_element(&mut r, &ring);
        assert_eq!(GroupRingElement::from_pairs(&ring, &a.to_pairs()).unwrap(), a);
    }
}

#[test]
fn central_longitude_power() {
    // λμ⁶ is central in the trefoil group
    let ring = trefoil_ring();
    let z = ring.peripheral_word(1, 6);
    let mut r = rng(24);
    for _ in 0..50 {
        let a = random_element(&mut r, &ring);
        assert_eq!(a.left_mul_word(&z).unwrap(), a.right_mul_word(&z).unwrap());
    }
}

#[test]
fn laurent_arithmetic() {
    let p = LaurentPoly::from_terms([(-1, 2), (0, 1), (3, -1)]);
    let q = LaurentPoly::from_terms([(1, 1), (0, -1)]);
    let pq = &p * &q;
    assert_eq!(pq, LaurentPoly::from_terms([(-1, -2), (0, 2 - 1), (1, 1), (3, 1), (4, -1)]));
    assert!((&pq - &pq).is_zero());
    assert_eq!(p.shift(1).coeff(4), -1);
    assert_eq!(LaurentPoly::zero().format("l"), "0");
}
