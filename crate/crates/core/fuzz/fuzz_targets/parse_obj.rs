#![no_main]

use isogrow::mesh::{parse_obj, to_obj_string, topology_report, weld};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(mesh) = parse_obj(text, "fuzz") else { return };
    let _ = topology_report(&weld(&mesh, 0.0));
    let again = parse_obj(&to_obj_string(&mesh), "again").expect("written OBJ parses");
    assert_eq!(again.triangle_count(), mesh.triangle_count());
});
