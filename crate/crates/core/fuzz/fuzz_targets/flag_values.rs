#![no_main]

use isogrow::growth::SeedRegion;
use isogrow::interp::InterpParams;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = text.parse::<InterpParams>() {
        assert!(p.lower_value() < p.lower_limit() && p.upper_limit() < p.upper_value());
    }
    if let Ok(r) = text.parse::<SeedRegion>() {
        if !matches!(r, SeedRegion::Cubes(_)) {
            assert_eq!(r.to_string().parse::<SeedRegion>().unwrap(), r);
        }
    }
});
