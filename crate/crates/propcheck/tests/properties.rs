use cccc_core::cc;
use cccc_propcheck::{run_property, EnvProfile, Gen, GenConfig, Property};

fn cfg(iterations: u64) -> GenConfig {
    GenConfig { iterations, ..GenConfig::default() }
}

fn assert_holds(prop: Property, iterations: u64) {
    let report = run_property(prop, &cfg(iterations));
    println!("{}", report.summary());
    assert!(report.ok(), "{}", report.failure_lines());
    assert!(report.checked * 10 >= iterations * 9, "{}", report.summary());
}

#[test]
fn subject_reduction() {
    assert_holds(Property::SubjectReduction, 150);
}

#[test]
fn type_preservation() {
    assert_holds(Property::TypePreservation, 150);
}

#[test]
fn code_closedness() {
    assert_holds(Property::CodeClosedness, 150);
}

#[test]
fn compositionality() {
    assert_holds(Property::Compositionality, 150);
}

#[test]
fn reduction_preservation() {
    assert_holds(Property::ReductionPreservation, 150);
}

#[test]
fn coherence() {
    assert_holds(Property::Coherence, 150);
}

#[test]
fn model_type_preservation() {
    assert_holds(Property::ModelTypePreservation, 150);
}

#[test]
fn model_reduction_preservation() {
    assert_holds(Property::ModelReductionPreservation, 150);
}

#[test]
fn model_coherence() {
    assert_holds(Property::ModelCoherence, 150);
}

#[test]
fn round_trip() {
    assert_holds(Property::RoundTrip, 150);
}

#[test]
fn separate_compilation() {
    assert_holds(Property::SeparateCompilation, 150);
}

#[test]
fn generator_is_sound_on_every_profile() {
    for profile in EnvProfile::ALL {
        let env = profile.env();
        for seed in 0..100 {
            let mut g = Gen::new(seed);
            let (e, ty) = g.typed_term(&env, 3).expect("generation succeeds on preset environments");
            cc::check(&env, &e, &ty).unwrap_or_else(|err| panic!("{profile}: {e} : {ty}: {err}"));
        }
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let parallel = run_property(Property::Coherence, &cfg(24));
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let serial = pool.install(|| run_property(Property::Coherence, &cfg(24)));
    assert_eq!(parallel, serial);
}
