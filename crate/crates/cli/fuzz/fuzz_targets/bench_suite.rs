#![no_main]

use isogrow_cli::BenchSuite;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let _ = serde_json::from_slice::<BenchSuite>(data);
});
