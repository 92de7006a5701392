#![no_main]

use libfuzzer_sys::fuzz_target;
use orbiteq::doc::Document;

fuzz_target!(|data: &[u8]| {
    // Points, clopen sets, bisections and groupoid elements: admissibility
    // and witness-consistency checks.
    let reg = orbiteq_fuzz::test_registry();
    let Some(doc) = orbiteq_fuzz::parse_as(data, |d| {
        matches!(
            d,
            Document::Bisection(_) | Document::GroupoidElement(_) | Document::GroupoidIso(_)
        )
    }) else {
        return;
    };
    match doc {
        Document::Bisection(b) => {
            let _ = reg.resolve_bisection(&b);
        }
        Document::GroupoidElement(e) => {
            let _ = reg.resolve_groupoid_element(&e);
        }
        Document::GroupoidIso(_) => {
            let mut fresh = orbiteq::doc::Registry::new();
            let _ = fresh.add(doc);
        }
        _ => {}
    }
});
