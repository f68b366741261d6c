use std::collections::BTreeMap;

use nonorient::catalog::{mod_n21, mod_n31_v};
use nonorient::freeaut::{nontriviality_detector, NontrivialityDetector};
use nonorient::homology::*;
use nonorient::*;

fn class(g: usize, idx: &[usize]) -> Mod2Class {
    Mod2Class::from_indices(g, idx).unwrap()
}

fn two_sided(g: usize) -> Vec<Mod2Class> {
    (1..1u32 << g).map(|b| Mod2Class::new(g, b).unwrap()).filter(|c| !c.is_one_sided()).collect()
}

#[test]
fn transvection_swaps_basis_vectors() {
    let t = transvection(&class(3, &[1, 2])).unwrap();
    assert_eq!(t.apply(&class(3, &[1])), class(3, &[2]));
    assert_eq!(t.apply(&class(3, &[2])), class(3, &[1]));
    assert_eq!(t.apply(&class(3, &[3])), class(3, &[3]));
    assert!(matches!(transvection(&class(3, &[1])), Err(Error::NotTwoSided(_))));
    assert!(transvection(&Mod2Class::new(3, 0).unwrap()).is_err());
}

#[test]
fn chain_classes_form_a_path() {
    let cs = chain_classes(5, 4).unwrap();
    for (i, a) in cs.iter().enumerate() {
        for (j, b) in cs.iter().enumerate() {
            assert_eq!(a.pair(b), i.abs_diff(j) == 1, "{a} vs {b}");
        }
    }
    assert_eq!(chain_classes(5, 1).unwrap().len(), 1);
    assert!(chain_classes(5, 5).is_err());
    assert!(chain_classes(5, 0).is_err());
}

#[test]
fn transvection_relations_for_all_pairs() {
    for g in 1..=5 {
        for a in two_sided(g) {
            let ta = transvection(&a).unwrap();
            assert!(ta.mul(&ta).is_identity());
            assert!(ta.preserves_pairing());
            assert_eq!(ta.apply(&a), a);
            for x in (1..1u32 << g).map(|b| Mod2Class::new(g, b).unwrap()).filter(|x| !x.pair(&a)) {
                assert_eq!(ta.apply(&x), x);
            }
            for b in two_sided(g) {
                let tb = transvection(&b).unwrap();
                if a.pair(&b) {
                    assert_eq!(ta.mul(&tb).mul(&ta), tb.mul(&ta).mul(&tb));
                } else {
                    assert_eq!(ta.mul(&tb), tb.mul(&ta));
                }
            }
        }
    }
}

#[test]
fn isometry_groups() {
    assert_eq!(isometries(1).len(), 1);
    assert_eq!(isometries(2).len(), 2);
    assert_eq!(isometries(3).len(), 6);
    for g in 1..=4 {
        for m in isometries(g) {
            assert!(m.preserves_pairing() && m.is_invertible());
            assert!(m.mul(&m.inverse().unwrap()).is_identity());
        }
    }
}

#[test]
fn assignment_for_the_v_form() {
    let p = mod_n31_v().presentation;
    let a = find_assignment(&p, &n31_twist_classes(), 3).unwrap().expect("assignment exists");
    assert!(a.satisfies(&p).unwrap());
    for r in p.relators() {
        assert!(a.image(r).unwrap().is_identity());
    }
    for m in a.matrices.iter().flatten() {
        assert!(m.preserves_pairing());
    }
    let opts = SearchOptions { seed: 7, max_tries: None };
    let b = find_assignment_with(&p, &n31_twist_classes(), 3, opts).unwrap().expect("seeded search succeeds");
    assert!(b.satisfies(&p).unwrap());
}

#[test]
fn assignment_for_the_one_holed_klein_bottle() {
    let p = mod_n21().presentation;
    let classes: BTreeMap<String, Mod2Class> = [("t".to_string(), class(2, &[1, 2]))].into();
    let a = find_assignment(&p, &classes, 2).unwrap().expect("assignment exists");
    assert!(a.satisfies(&p).unwrap());
}

#[test]
fn contradictory_classes_have_no_assignment() {
    let p = Presentation::from_strs("eq", &["a", "b"], &["a b^-1"]).unwrap();
    let classes: BTreeMap<String, Mod2Class> =
        [("a".to_string(), class(4, &[1, 2])), ("b".to_string(), class(4, &[3, 4]))].into();
    assert_eq!(find_assignment(&p, &classes, 4).unwrap(), None);
    let bad: BTreeMap<String, Mod2Class> = [("a".to_string(), class(3, &[1]))].into();
    assert!(find_assignment(&p, &bad, 3).is_err());
}

#[test]
fn matrix_refutation_examples() {
    let p = mod_n31_v().presentation;
    let a = find_assignment(&p, &n31_twist_classes(), 3).unwrap().unwrap();
    let a1b = p.parse_word("A1 B").unwrap();
    assert!(refute_by_rep(&a1b, &a).unwrap());
    assert!(!refute_by_rep(&a1b.pow(3), &a).unwrap());
    assert!(!refute_by_rep(&Word::identity(), &a).unwrap());
    let partial = Assignment { genus: 3, generators: a.generators.clone(), matrices: vec![None; 4] };
    assert!(matches!(refute_by_rep(&a1b, &partial), Err(Error::UncoveredGenerator(_))));
}

#[test]
fn refuter_construction_checks_relators() {
    let p = mod_n31_v().presentation;
    let mut a = find_assignment(&p, &n31_twist_classes(), 3).unwrap().unwrap();
    assert!(MatrixRefuter::new(a.clone(), &p).is_ok());
    a.matrices[0] = Some(transvection(&class(3, &[1, 3])).unwrap());
    assert!(MatrixRefuter::new(a, &p).is_err());
}

#[test]
fn detector_sees_what_mod_two_misses() {
    let p = mod_n31_v().presentation;
    let a1b3 = p.parse_word("A1 B").unwrap().pow(3);
    assert!(nontriviality_detector(&a1b3).unwrap());
    assert!(!nontriviality_detector(&Word::identity()).unwrap());
    let d = NontrivialityDetector::new().unwrap();
    let images: Vec<_> = (1..=4).map(|m| d.image(&a1b3.pow(m)).unwrap()).collect();
    for i in 0..images.len() {
        assert!(!images[i].is_identity());
        for j in 0..i {
            assert_ne!(images[i], images[j]);
        }
    }
    assert!(nontriviality_detector(&p.g("V")).is_err());
}

#[test]
fn certified_twist_words_are_never_refuted() {
    let e = mod_n31_v();
    let p = &e.presentation;
    let a = find_assignment(p, &n31_twist_classes(), 3).unwrap().unwrap();
    let d = NontrivialityDetector::new().unwrap();
    let delta = p.parse_word("A1 B").unwrap().pow(3);
    let mut corpus = vec![
        delta.multiply(&p.g("A1")).multiply(&delta.inverse()).multiply(&p.g("A1").inverse()),
        delta.multiply(&p.g("B")).multiply(&delta.inverse()).multiply(&p.g("B").inverse()),
    ];
    for r in &p.relators()[..3] {
        for g in ["A1", "B", "A3 B^-1"] {
            corpus.push(r.conjugate(&p.parse_word(g).unwrap()));
        }
    }
    for w in corpus {
        let v = is_consequence(&w, p, 50_000).unwrap();
        let cert = v.certificate().expect("corpus word certified");
        assert!(cert.certifies(&w, p.relators()));
        assert!(!refute_by_rep(&w, &a).unwrap());
        assert!(!d.detects(&w).unwrap());
    }
}
