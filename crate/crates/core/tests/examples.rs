//! Fixed input/output pairs, each checked by hand arithmetic.

use workbench_core::bar::{check_thm_cycbar_free, CyclicBar, FinCmMonoid, PointedCmSet};
use workbench_core::circle::{compose_uec, retract_step, wreath_act};
use workbench_core::cyclic::{act_gen, circle_act_point, lambda_to_ucc};
use workbench_core::operads::{semidirect_iso, FramedDisk, LittleDisk, Operad};
use workbench_core::{
    arcs_overlap, block_cycle_perm, upsilon, ArcInterval, ArcPair, ArcSystem, CyclicElem,
    CyclicPoint, DiskPair, Gen, Perm, Rat, Turn, Variant, WreathElem,
};

fn r(p: i64, q: i64) -> Rat {
    Rat::new(p, q)
}

fn arc(c: Rat, hw: Rat) -> ArcInterval {
    ArcInterval::new(Turn::on_circle(c), hw).unwrap()
}

fn ucc(m: u32, zeta: &[Rat], phi: &[Rat]) -> ArcSystem {
    let pairs = zeta
        .iter()
        .map(|z| ArcPair::new(z.clone(), Rat::zero()))
        .collect();
    ArcSystem::new(m, pairs, phi.to_vec(), Variant::UCc).unwrap()
}

#[test]
fn rationals_normalize() {
    assert_eq!(r(2, 4), r(1, 2));
    assert_eq!(r(3, -6), r(-1, 2));
    assert_eq!("2/4".parse::<Rat>().unwrap(), r(1, 2));
    assert_eq!(r(-1, 4).rem_euclid(&Rat::one()), r(3, 4));
    assert_eq!(r(7, 3).rem_euclid(&r(2, 1)), r(1, 3));
}

#[test]
fn arc_overlap_endpoints() {
    let small = arcs_overlap(&arc(r(0, 1), r(1, 8)), &arc(r(1, 2), r(1, 8)), true).unwrap();
    assert!(!small);
    let (a, b) = (arc(r(0, 1), r(1, 4)), arc(r(1, 2), r(1, 4)));
    assert!(!arcs_overlap(&a, &b, true).unwrap());
    assert!(arcs_overlap(&a, &b, false).unwrap());
}

#[test]
fn upsilon_square_at_m1_is_identity() {
    let u = upsilon(1, 2);
    let u2 = u.compose(&u).unwrap();
    assert_eq!(u2, u.unit_like());
}

#[test]
fn unit_blocks_give_alpha() {
    for n in 1..=4 {
        for k in 0..n as i64 {
            let alpha = Perm::long_cycle(n).pow(k);
            assert_eq!(block_cycle_perm(&vec![1; n], &alpha).unwrap(), alpha);
        }
    }
}

#[test]
fn little_disk_composition() {
    let op = LittleDisk::closed();
    let got = op
        .compose(
            &vec![DiskPair::new(r(0, 1), r(1, 2))],
            &[vec![DiskPair::new(r(1, 2), r(1, 4))]],
        )
        .unwrap();
    assert_eq!(got, vec![DiskPair::new(r(1, 4), r(1, 8))]);
}

#[test]
fn framed_composition_multiplies_frames() {
    let op = FramedDisk::new(2);
    let neg = CyclicElem::generator(2);
    let a = semidirect_iso(&[DiskPair::new(r(0, 1), r(1, 2))], &[neg]).unwrap();
    let b = semidirect_iso(&[DiskPair::new(r(1, 2), r(1, 4))], &[neg]).unwrap();
    assert_eq!(a[0].affine().slope, r(-1, 2));
    let c = op.compose(&a, &[b]).unwrap();
    assert_eq!(c[0].center, r(-1, 4));
    assert_eq!(c[0].radius, r(1, 8));
    assert_eq!(c[0].frame, CyclicElem::identity(2));
}

#[test]
fn composition_worked_example() {
    let outer = ArcSystem::new(
        1,
        vec![
            ArcPair::new(r(0, 1), r(1, 8)),
            ArcPair::new(r(1, 2), r(1, 8)),
        ],
        vec![r(1, 2), r(1, 2)],
        Variant::UEc,
    )
    .unwrap();
    let inners = vec![
        vec![DiskPair::new(r(0, 1), r(1, 2))],
        vec![DiskPair::new(r(1, 2), r(1, 4))],
    ];
    let y = compose_uec(&outer, &inners).unwrap();
    assert_eq!(
        y.pairs,
        vec![
            ArcPair::new(r(0, 1), r(1, 16)),
            ArcPair::new(r(9, 16), r(1, 32))
        ]
    );
    assert_eq!(y.phi, vec![r(9, 16), r(7, 16)]);
}

#[test]
fn zero_radius_inners_land_on_centers() {
    let outer = ArcSystem::new(
        1,
        vec![
            ArcPair::new(r(0, 1), r(1, 8)),
            ArcPair::new(r(1, 2), r(1, 8)),
        ],
        vec![r(1, 2), r(1, 2)],
        Variant::UEc,
    )
    .unwrap();
    let inners = vec![
        vec![DiskPair::new(r(1, 2), r(0, 1))],
        vec![DiskPair::new(r(-1, 1), r(0, 1))],
    ];
    let y = compose_uec(&outer, &inners).unwrap();
    assert!(y.all_radii_zero());
    let centers: Vec<Rat> = y.pairs.iter().map(|p| p.zeta.clone()).collect();
    assert_eq!(centers, vec![r(1, 16), r(3, 8)]);
}

#[test]
fn full_rotation_moves_by_one_over_m() {
    let x = ucc(2, &[r(1, 8)], &[r(1, 2)]);
    let g = WreathElem::new(Perm::identity(1), vec![CyclicElem::generator(2)]).unwrap();
    let y = wreath_act(&g, &x).unwrap();
    assert_eq!(y.pairs[0].zeta, r(5, 8));
}

#[test]
fn retraction_examples() {
    let x = ucc(1, &[r(0, 1), r(0, 1)], &[r(1, 1), r(0, 1)]);
    assert_eq!(retract_step(&x).unwrap().phi, vec![r(1, 2), r(1, 2)]);
    let x = ucc(
        1,
        &[r(0, 1), r(1, 3), r(2, 3)],
        &[r(1, 3), r(1, 3), r(1, 3)],
    );
    let y = retract_step(&x).unwrap();
    assert_eq!(y.phi, x.phi);
    let centers: Vec<Rat> = y.pairs.iter().map(|p| p.zeta.clone()).collect();
    assert_eq!(centers, vec![r(1, 6), r(1, 2), r(5, 6)]);
}

#[test]
fn twist_on_points() {
    let p = CyclicPoint::new(3, r(1, 3), vec![r(1, 1)]).unwrap();
    assert_eq!(act_gen(Gen::Twist, &p).unwrap().r, r(7, 3));
    let p = CyclicPoint::new(1, r(1, 4), vec![r(1, 3), r(2, 3)]).unwrap();
    let twice = act_gen(Gen::Twist, &act_gen(Gen::Twist, &p).unwrap()).unwrap();
    assert_eq!(twice, p);
    let p = CyclicPoint::new(2, r(1, 2), vec![r(1, 1)]).unwrap();
    assert_eq!(circle_act_point(&r(1, 2), &p).r, r(3, 2));
}

#[test]
fn lambda_degree_zero() {
    let p = CyclicPoint::new(1, r(1, 4), vec![r(1, 1)]).unwrap();
    assert_eq!(lambda_to_ucc(&p).unwrap(), ucc(1, &[r(1, 4)], &[r(1, 1)]));
}

#[test]
fn cyclic_bar_twist_swaps_with_sigma() {
    let c2 = FinCmMonoid::c2(1);
    let bar = CyclicBar::new(&c2);
    assert_eq!(bar.twist(&[0, 1]), vec![1, 0]);
    assert_eq!(bar.twist_pow(&[0, 1], 2), vec![0, 1]);
    let band = FinCmMonoid::band(2).unwrap();
    let bar = CyclicBar::new(&band);
    assert_eq!(bar.twist(&[0, 1]), vec![2, 0]);
}

#[test]
fn free_case_counts_for_one_letter() {
    let x = PointedCmSet::fixed(1, 1);
    let rep = check_thm_cycbar_free(&x, 2, 4).unwrap();
    assert!(rep.violations.is_empty(), "{:?}", rep.violations);
    let two = rep.degrees.iter().find(|d| d.n == 2).unwrap();
    assert_eq!(two.left_classes, two.right_classes);
    assert!(two.left_classes > 0);
}
