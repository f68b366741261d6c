use num_bigint::BigInt;

use nonorient::abelian::Abelianization;
use nonorient::catalog::*;
use nonorient::coset::enumerate_cosets;
use nonorient::tietze::tietze_check;
use nonorient::verifier::n31v_prover;
use nonorient::*;

const C: &str = "A1^2 A3 B A1^2 A3 B A1^2 A3 B";

/// Relations transcribed as `LHS = RHS` pairs.
fn relator(p: &Presentation, lhs: &str, rhs: &str) -> Word {
    p.parse_word(lhs).unwrap().multiply(&p.parse_word(rhs).unwrap().inverse())
}

#[test]
fn u_form_matches_printed_relations() {
    let e = mod_n31_u();
    let p = &e.presentation;
    let expected = [
        relator(p, "A1 A3", "A3 A1"),
        relator(p, "A1 B A1", "B A1 B"),
        relator(p, "A3 B A3", "B A3 B"),
        relator(p, "U A1 U^-1", "A1^-1"),
        relator(p, "U B U^-1", "A3^-1 B^-1 A3"),
        relator(p, "A3 U A3 U", C),
        relator(p, "U A3 U A3", C),
    ];
    assert_eq!(p.relators(), &expected);
    assert_eq!(p.to_text(), include_str!("golden/n31u.txt"));
}

#[test]
fn v_form_matches_printed_relations() {
    let e = mod_n31_v();
    let p = &e.presentation;
    let expected = [
        relator(p, "A1 A3", "A3 A1"),
        relator(p, "A1 B A1", "B A1 B"),
        relator(p, "A3 B A3", "B A3 B"),
        relator(p, "V A1 V^-1", "A1^-1"),
        relator(p, "V B V^-1", "B^-1"),
        relator(p, "V^2 A3", "A3 V^2"),
        relator(p, "V^2", C),
    ];
    assert_eq!(p.relators(), &expected);
    assert_eq!(p.to_text(), include_str!("golden/n31v.txt"));
    assert_eq!(e.word("W"), Some(&p.parse_word("V^-1 A3 V").unwrap()));
    assert_eq!(e.word("C"), Some(&p.parse_word(C).unwrap()));
    let five = e.relator_index("5'").unwrap();
    assert!(e.is_tagged(five, REDUNDANT_TAG));
}

#[test]
fn small_catalog_entries() {
    let n2 = mod_n2();
    assert_eq!(n2.presentation.to_text(), include_str!("golden/n2.txt"));
    let inv = Abelianization::of(&n2.presentation).invariants();
    assert_eq!(inv.torsion(), vec![BigInt::from(2), BigInt::from(2)]);
    let x2 = n2.presentation.relators()[0].clone();
    assert!(is_consequence(&x2, &n2.presentation, 10).unwrap().is_certified());
    let trivial = enumerate_cosets(&n2.presentation, &[], 100).unwrap();
    assert_eq!(trivial.index, 4);

    let n21 = mod_n21();
    assert_eq!(n21.presentation.to_text(), include_str!("golden/n21.txt"));
    let p = &n21.presentation;
    let flip = GeneratorMap::from_named(p, p, &[("y", "y"), ("t", "t^-1")]).unwrap();
    let image = flip.apply(&p.relators()[0]);
    assert!(is_consequence(&image, p, 1000).unwrap().is_certified());
}

#[test]
fn redundant_relator_follows_from_the_others() {
    let e = mod_n31_v();
    let five = e.relator_index("5'").unwrap();
    let reduced = e.without_relators(&[five]).unwrap();
    let w = &e.presentation.relators()[five];
    let v = is_consequence(w, &reduced, 100_000).unwrap();
    match &v {
        ConsequenceVerdict::Certified(c) => assert!(c.certifies(w, reduced.relators())),
        ConsequenceVerdict::Unknown { spent } => assert!(*spent > 0),
        other => panic!("5' must not be refuted, got {}", other.label()),
    }
}

#[test]
fn w_identities() {
    let e = mod_n31_v();
    let p = &e.presentation;
    let w = e.word("W").unwrap();
    let (a1, a3, v) = (p.g("A1"), p.g("A3"), p.g("V"));
    for i in 1..=3 {
        let wi = w.pow(i);
        let commute = a1.multiply(&wi).multiply(&a1.inverse()).multiply(&wi.inverse());
        let shift = wi.multiply(&v).multiply(&a3.pow(i).inverse()).multiply(&v.inverse());
        for target in [commute, shift] {
            match is_consequence(&target, p, 100_000).unwrap() {
                ConsequenceVerdict::Certified(c) => assert!(c.certifies(&target, p.relators())),
                ConsequenceVerdict::Unknown { spent } => assert!(spent > 0),
                other => panic!("identity refuted: {}", other.label()),
            }
        }
    }
}

fn u_to_v(fwd_u: &str) -> (GeneratorMap, GeneratorMap) {
    let (u, v) = (mod_n31_u(), mod_n31_v());
    let fwd = GeneratorMap::from_named(&u.presentation, &v.presentation, &[("A1", "A1"), ("A3", "A3"), ("B", "B"), ("U", fwd_u)])
        .unwrap();
    let bwd = GeneratorMap::from_named(&v.presentation, &u.presentation, &[("A1", "A1"), ("A3", "A3"), ("B", "B"), ("V", "A3 U")])
        .unwrap();
    (fwd, bwd)
}

#[test]
fn tietze_u_and_v_forms() {
    let (u, v) = (mod_n31_u(), mod_n31_v());
    let (fwd, bwd) = u_to_v("A3^-1 V");
    let r = tietze_check(&Prover::new(&u.presentation), &Prover::new(&v.presentation), &fwd, &bwd, 100_000).unwrap();
    assert!(r.pass(), "{:?}", r.items.iter().map(|i| (&i.label, i.verdict.label())).collect::<Vec<_>>());
}

#[test]
fn tietze_identity_maps() {
    let e = mod_n21();
    let p = &e.presentation;
    let id = GeneratorMap::identity(p);
    let r = tietze_check(&Prover::new(p), &Prover::new(p), &id, &id, 1000).unwrap();
    assert!(r.pass());
}

#[test]
fn tietze_wrong_substitution_is_refuted() {
    let u = mod_n31_u();
    let (fwd, bwd) = u_to_v("V");
    let q = n31v_prover().unwrap();
    let r = tietze_check(&Prover::new(&u.presentation), &q, &fwd, &bwd, 20_000).unwrap();
    assert!(!r.pass());
    assert!(r
        .items
        .iter()
        .any(|i| matches!(i.verdict, ConsequenceVerdict::RefutedByMatrixRep(_))));
}

#[test]
fn map_missing_a_generator_is_an_error() {
    let (u, v) = (mod_n31_u(), mod_n31_v());
    let r = GeneratorMap::from_named(&u.presentation, &v.presentation, &[("A1", "A1"), ("A3", "A3"), ("B", "B")]);
    assert_eq!(r, Err(Error::MissingImage("U".into())));
}

#[test]
fn coset_examples() {
    let l = SubgroupSpec::twist_subgroup_l();
    let t = coset_enumerate(&l, 10_000).unwrap();
    assert_eq!(t.index, 2);
    assert!(t.verify(&l.ambient.presentation, &l.generators));

    let e = mod_n31_v();
    let all: Vec<Word> = (0..4).map(Word::gen).collect();
    let s = SubgroupSpec::new(e, all).unwrap();
    assert_eq!(coset_enumerate(&s, 100).unwrap().index, 1);

    let b = braid3();
    assert_eq!(enumerate_cosets(&b.presentation, &[], 200), Err(Error::CosetOverflow(200)));
    assert!(enumerate_cosets(&b.presentation, &[], 0).is_err());
}

#[test]
fn coset_index_is_independent_of_ordering() {
    let l = SubgroupSpec::twist_subgroup_l();
    let p = &l.ambient.presentation;
    let n = p.relators().len();
    for shift in 0..n {
        let mut rels = p.relators().to_vec();
        rels.rotate_left(shift);
        if shift % 2 == 1 {
            rels.reverse();
        }
        let q = p.with_relators("permuted", rels).unwrap();
        let mut gens = l.generators.clone();
        let k = shift % gens.len();
        gens.rotate_left(k);
        let t = enumerate_cosets(&q, &gens, 10_000).unwrap();
        assert_eq!(t.index, 2);
    }
    // relabel generators by reversing their order
    let names: Vec<&str> = p.generators().iter().rev().map(String::as_str).collect();
    let perm: Vec<Word> = (0..4u16).map(|g| Word::gen(3 - g)).collect();
    let rels: Vec<Word> = p.relators().iter().map(|r| r.substitute(&perm)).collect();
    let q = Presentation::new("relabelled", names.iter().map(|s| s.to_string()).collect(), rels).unwrap();
    let gens: Vec<Word> = l.generators.iter().map(|w| w.substitute(&perm)).collect();
    assert_eq!(enumerate_cosets(&q, &gens, 10_000).unwrap().index, 2);
}

#[test]
fn n4_template_stays_symbolic() {
    let t = n4_boundary_template();
    let w = t.instantiate(1, -2).unwrap();
    assert_eq!(w.len(), 7);
    assert!(t.text.contains("k1") && t.text.contains("k2"));
}
