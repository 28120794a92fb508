use std::collections::BTreeSet;

use image::{GrayImage, Luma};
use isogrow::growth::{EdgeGrowth, SeedRegion};
use isogrow::interp::InterpMode;
use isogrow::mc::extract_mc;
use isogrow::mesh::{read_obj, topology_report, weld, write_obj};
use isogrow::volume::{
    load_slices, read_descriptor, write_raw, Endianness, Generator, RawDescriptor, ValueKind, Volume,
};
use proptest::prelude::*;

#[test]
fn descriptor_to_obj_and_back() {
    let dir = tempfile::tempdir().unwrap();
    let v = Generator::shell(16).build().unwrap();
    write_raw(&v, &dir.path().join("shell.raw"), ValueKind::U16, Endianness::Big).unwrap();
    RawDescriptor {
        data_file: "shell.raw".into(),
        dims: v.dims(),
        value_type: ValueKind::U16,
        endianness: Endianness::Big,
        spacing: [1.0; 3],
    }
    .save(&dir.path().join("shell.json"))
    .unwrap();
    let (_, back) = read_descriptor(&dir.path().join("shell.json")).unwrap();
    assert_eq!(back.values(), v.values());

    let mesh = extract_mc(&back, 50.0, InterpMode::Linear);
    let obj = dir.path().join("shell.obj");
    write_obj(&mesh, &obj).unwrap();
    let read = read_obj(&obj).unwrap();
    assert_eq!(read.triangle_count(), mesh.triangle_count());
    assert_eq!(topology_report(&weld(&read, 0.0)), topology_report(&mesh));
}

#[test]
fn png_stack_matches_generator() {
    let dir = tempfile::tempdir().unwrap();
    let v = Generator::sphere(12).build().unwrap();
    let [w, h, d] = v.dims();
    let mut paths = Vec::new();
    for z in 0..d {
        let img = GrayImage::from_fn(w as u32, h as u32, |x, y| {
            Luma([v.get(x as usize, y as usize, z) as u8])
        });
        let p = dir.path().join(format!("s{z:03}.png"));
        img.save(&p).unwrap();
        paths.push(p);
    }
    let stacked = load_slices(&paths).unwrap();
    assert_eq!(stacked.dims(), v.dims());
    assert_eq!(stacked.values(), v.values());
}

fn crossing_edge_points(v: &Volume, y: f64) -> usize {
    let [nx, ny, nz] = v.dims();
    let mut n = 0;
    for z in 0..nz {
        for yy in 0..ny {
            for x in 0..nx {
                let here = v.get(x, yy, z) as f64 > y;
                for (dx, dy, dz) in [(1, 0, 0), (0, 1, 0), (0, 0, 1)] {
                    let (a, b, c) = (x + dx, yy + dy, z + dz);
                    if a < nx && b < ny && c < nz && (v.get(a, b, c) as f64 > y) != here {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mc_places_one_vertex_per_crossing_edge(
        values in prop::collection::vec(0u8..=255, 125),
        y in 1u8..255,
    ) {
        let v = Volume::new([5; 3], values.into_iter().map(f32::from).collect()).unwrap();
        let y = y as f64 + 0.5;
        let mesh = weld(&extract_mc(&v, y, InterpMode::Linear), 0.0);
        let used: BTreeSet<u32> = mesh.triangles().iter().flatten().copied().collect();
        prop_assert_eq!(used.len(), crossing_edge_points(&v, y));
    }

    #[test]
    fn growth_triangles_come_from_emitted_loops(
        values in prop::collection::vec(0u8..=255, 125),
        y in 1u8..255,
    ) {
        let v = Volume::new([5; 3], values.into_iter().map(f32::from).collect()).unwrap();
        let y = y as f64 + 0.5;
        let region = SeedRegion::Box { lo: [0; 3], hi: [4; 3] };
        let Ok(out) = EdgeGrowth::new(&v, y, InterpMode::default()).run(&region) else {
            return Ok(());
        };
        // a loop of L edges gives L - 2 triangles, or L around a centre
        let expected: usize = out
            .patches
            .iter()
            .map(|p| if p.patch.needs_center() { p.patch.len() } else { p.patch.len() - 2 })
            .sum();
        prop_assert_eq!(out.mesh.triangle_count(), expected);
        let fanned = out.patches.iter().filter(|p| p.patch.needs_center()).count();
        prop_assert_eq!(fanned, out.stats.fanned);
        prop_assert_eq!(out.patches.len(), out.stats.patches + out.stats.seeds);
    }
}
