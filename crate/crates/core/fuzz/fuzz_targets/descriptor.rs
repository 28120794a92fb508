#![no_main]

use isogrow::volume::RawDescriptor;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = RawDescriptor::parse(text);
    }
});
