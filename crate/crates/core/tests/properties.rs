mod common;

use lambda_dcs::convert::to_lc_unary;
use lambda_dcs::parser::format;
use lambda_dcs::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn demo_schema() -> Schema {
    Schema::from_kb(&KnowledgeBase::demo())
}

/// Renames every mu and lambda binder by prefixing it.
fn rename_binders(u: &UnaryForm, prefix: &str) -> UnaryForm {
    fn bin(b: &BinaryForm, prefix: &str) -> BinaryForm {
        match b {
            BinaryForm::Property(_) => b.clone(),
            BinaryForm::Reverse(inner) => BinaryForm::reverse(bin(inner, prefix)),
            BinaryForm::Lambda(v, body) => BinaryForm::lambda(&format!("{prefix}{v}"), rename_binders(body, prefix)),
        }
    }
    match u {
        UnaryForm::EntityLit(_) => u.clone(),
        UnaryForm::Var(v) => UnaryForm::var(&format!("{prefix}{v}")),
        UnaryForm::Join(b, inner) => UnaryForm::join(bin(b, prefix), rename_binders(inner, prefix)),
        UnaryForm::Intersect(l, r) => UnaryForm::and(rename_binders(l, prefix), rename_binders(r, prefix)),
        UnaryForm::Union(l, r) => UnaryForm::or(rename_binders(l, prefix), rename_binders(r, prefix)),
        UnaryForm::Negate(inner) => UnaryForm::not(rename_binders(inner, prefix)),
        UnaryForm::Aggregate(_, inner) => UnaryForm::count(rename_binders(inner, prefix)),
        UnaryForm::Superlative(op, s, d) => UnaryForm::superlative(*op, rename_binders(s, prefix), bin(d, prefix)),
        UnaryForm::Mu(v, body) => UnaryForm::mu(&format!("{prefix}{v}"), rename_binders(body, prefix)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lc_text_reads_back(seed in any::<u64>(), depth in 1usize..5) {
        let u = gen_term(seed, depth, &demo_schema());
        for t in [to_lc_unary(&u), convert(&u)] {
            let back = parse_lc(&t.to_string()).unwrap();
            prop_assert!(alpha_eq(&back, &t), "{} vs {}", back, t);
        }
    }

    #[test]
    fn alpha_eq_is_an_equivalence(a in any::<u64>(), b in any::<u64>()) {
        let schema = demo_schema();
        let (s, t) = (convert(&gen_term(a, 3, &schema)), convert(&gen_term(b, 3, &schema)));
        prop_assert!(alpha_eq(&s, &s));
        prop_assert_eq!(alpha_eq(&s, &t), alpha_eq(&t, &s));
        let renamed = convert(&rename_binders(&gen_term(a, 3, &schema), "q_"));
        prop_assert!(alpha_eq(&s, &renamed), "{} vs {}", s, renamed);
        prop_assert_eq!(alpha_eq(&renamed, &t), alpha_eq(&s, &t));
    }

    #[test]
    fn simplify_is_idempotent(seed in any::<u64>(), depth in 1usize..5) {
        let once = convert(&gen_term(seed, depth, &demo_schema()));
        prop_assert_eq!(simplify(&once), once);
    }

    #[test]
    fn format_then_parse_is_identity(seed in any::<u64>(), depth in 1usize..6) {
        let u = gen_term(seed, depth, &demo_schema());
        prop_assert_eq!(parse(&format(&u)).unwrap(), u);
    }

    #[test]
    fn random_kb_semantics_agree(kb_seed in any::<u64>(), seed in any::<u64>(), depth in 1usize..4) {
        let kb = common::random_kb(&mut ChaCha8Rng::seed_from_u64(kb_seed), 40);
        let report = check_equivalence(&gen_term(seed, depth, &Schema::from_kb(&kb)), &kb);
        prop_assert!(report.is_match(), "{}", report);
    }

    #[test]
    fn kb_tsv_round_trip_and_indexes(seed in any::<u64>()) {
        let kb = common::random_kb(&mut ChaCha8Rng::seed_from_u64(seed), 200);
        prop_assert!(kb.indexes_consistent());
        let back = KnowledgeBase::parse(&kb.to_tsv()).unwrap();
        prop_assert_eq!(back.triples().collect::<Vec<_>>(), kb.triples().collect::<Vec<_>>());
        for p in common::probe_properties(&kb) {
            for v in common::probe_values(&kb) {
                prop_assert_eq!(kb.objects_of(&p, &v), common::scan_objects(&kb, &p, &v));
                prop_assert_eq!(kb.subjects_of(&p, &v), common::scan_subjects(&kb, &p, &v));
            }
        }
    }

    #[test]
    fn sparql_is_deterministic(seed in any::<u64>()) {
        let u = gen_term(seed, 4, &demo_schema());
        prop_assert_eq!(compile_sparql(&u, None), compile_sparql(&u, None));
    }
}
