//! Wavefront OBJ and binary STL.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::TriangleMesh;
use crate::error::{Error, Result};

/// ASCII OBJ with `v`, optional `vn` and `f` records. Coordinates are
/// printed as shortest round-trip decimals, so re-reading is exact.
pub fn to_obj_string(mesh: &TriangleMesh) -> String {
    let mut s = String::with_capacity(mesh.vertex_count() * 40 + mesh.triangle_count() * 20);
    for p in mesh.vertices() {
        let _ = writeln!(s, "v {} {} {}", p[0], p[1], p[2]);
    }
    if let Some(ns) = mesh.normals() {
        for n in ns {
            let _ = writeln!(s, "vn {} {} {}", n[0], n[1], n[2]);
        }
    }
    let with_normals = mesh.normals().is_some();
    for t in mesh.triangles() {
        let [a, b, c] = t.map(|i| i + 1);
        if with_normals {
            let _ = writeln!(s, "f {a}//{a} {b}//{b} {c}//{c}");
        } else {
            let _ = writeln!(s, "f {a} {b} {c}");
        }
    }
    s
}

pub fn write_obj(mesh: &TriangleMesh, path: &Path) -> Result<()> {
    fs::write(path, to_obj_string(mesh))?;
    Ok(())
}

pub fn read_obj(path: &Path) -> Result<TriangleMesh> {
    let text = fs::read_to_string(path)?;
    parse_obj(&text, &path.display().to_string())
}

/// Parses vertices and faces of an OBJ document; polygons are fanned into
/// triangles and other records are skipped.
pub fn parse_obj(text: &str, name: &str) -> Result<TriangleMesh> {
    let err = |line: usize, message: String| Error::Parse {
        path: name.to_string(),
        line,
        message,
    };
    let mut vertices = Vec::new();
    let mut faces: Vec<(usize, Vec<i64>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        let mut parts = line.split_whitespace();
        let Some(tag) = parts.next() else { continue };
        match tag {
            "v" => {
                let coords: Vec<f64> = parts
                    .map(|t| t.parse::<f64>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| err(line_no, format!("bad vertex coordinate: {e}")))?;
                if !(3..=4).contains(&coords.len()) {
                    return Err(err(line_no, format!("vertex needs 3 coordinates, got {}", coords.len())));
                }
                if coords.iter().any(|c| !c.is_finite()) {
                    return Err(err(line_no, "non-finite vertex coordinate".into()));
                }
                vertices.push([coords[0], coords[1], coords[2]]);
            }
            "f" => {
                let refs: Vec<i64> = parts
                    .map(|t| {
                        t.split('/')
                            .next()
                            .unwrap_or("")
                            .parse::<i64>()
                            .map_err(|e| err(line_no, format!("bad face index `{t}`: {e}")))
                    })
                    .collect::<Result<_>>()?;
                if refs.len() < 3 {
                    return Err(err(line_no, "face needs at least 3 vertices".into()));
                }
                faces.push((line_no, refs));
            }
            "vn" | "vt" | "vp" | "o" | "g" | "s" | "usemtl" | "mtllib" | "l" | "p" => {}
            other => return Err(err(line_no, format!("unknown record `{other}`"))),
        }
    }
    let n = vertices.len() as i64;
    let mut triangles = Vec::new();
    for (line_no, refs) in faces {
        let idx: Vec<u32> = refs
            .iter()
            .map(|&r| {
                let i = if r > 0 { r - 1 } else { n + r };
                if r == 0 || i < 0 || i >= n {
                    Err(err(line_no, format!("vertex index {r} out of range 1..={n}")))
                } else {
                    Ok(i as u32)
                }
            })
            .collect::<Result<_>>()?;
        for k in 1..idx.len() - 1 {
            let t = [idx[0], idx[k], idx[k + 1]];
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(err(line_no, format!("degenerate face {t:?}")));
            }
            triangles.push(t);
        }
    }
    TriangleMesh::new(vertices, triangles)
}

/// Binary STL: 80-byte header, little-endian triangle count, 50 bytes per
/// triangle.
pub fn to_stl_bytes(mesh: &TriangleMesh) -> Vec<u8> {
    let mut out = Vec::with_capacity(84 + 50 * mesh.triangle_count());
    let mut header = [0u8; 80];
    let tag = b"isogrow binary STL";
    header[..tag.len()].copy_from_slice(tag);
    out.extend_from_slice(&header);
    out.extend_from_slice(&(mesh.triangle_count() as u32).to_le_bytes());
    for t in mesh.triangles() {
        let [a, b, c] = t.map(|i| mesh.vertices()[i as usize]);
        let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
        let mut n = [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if len > 0.0 {
            n = n.map(|x| x / len);
        }
        for x in n.iter().chain(a.iter()).chain(b.iter()).chain(c.iter()) {
            out.extend_from_slice(&(*x as f32).to_le_bytes());
        }
        out.extend_from_slice(&0u16.to_le_bytes());
    }
    out
}

pub fn write_stl_binary(mesh: &TriangleMesh, path: &Path) -> Result<()> {
    fs::write(path, to_stl_bytes(mesh))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tri() -> TriangleMesh {
        TriangleMesh::new(vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], vec![[0, 1, 2]]).unwrap()
    }

    #[test]
    fn one_triangle_obj() {
        let s = to_obj_string(&tri());
        assert_eq!(s.lines().filter(|l| l.starts_with("v ")).count(), 3);
        assert_eq!(s.lines().filter(|l| l.starts_with("f ")).count(), 1);
    }

    #[test]
    fn stl_size() {
        assert_eq!(to_stl_bytes(&tri()).len(), 84 + 50);
        assert_eq!(to_stl_bytes(&TriangleMesh::default()).len(), 84);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.stl");
        write_stl_binary(&tri(), &p).unwrap();
        let bytes = fs::read(&p).unwrap();
        assert_eq!(u32::from_le_bytes(bytes[80..84].try_into().unwrap()), 1);
        // normal of the counter-clockwise triangle in the xy plane is +z
        assert_eq!(f32::from_le_bytes(bytes[92..96].try_into().unwrap()), 1.0);
    }

    #[test]
    fn obj_with_normals_parses_back() {
        let m = tri().with_normals(vec![[0.0, 0.0, 1.0]; 3]).unwrap();
        let s = to_obj_string(&m);
        assert!(s.contains("f 1//1 2//2 3//3"));
        let back = parse_obj(&s, "mem").unwrap();
        assert_eq!(back.vertices(), m.vertices());
        assert_eq!(back.triangles(), m.triangles());
    }

    #[test]
    fn polygons_and_negative_indices() {
        let m = parse_obj("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf -4 -3 -2 -1\n", "mem").unwrap();
        assert_eq!(m.triangles(), &[[0, 1, 2], [0, 2, 3]]);
    }

    #[test]
    fn malformed_obj_is_rejected() {
        for bad in [
            "v 0 0\n",
            "v 0 0 x\n",
            "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2\n",
            "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 4\n",
            "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n",
            "v 0 0 0\nv 1 0 0\nf 1 2 2\n",
            "bogus 1 2 3\n",
        ] {
            assert!(matches!(parse_obj(bad, "mem"), Err(Error::Parse { .. })), "{bad:?}");
        }
    }

    proptest! {
        #[test]
        fn obj_roundtrip_is_exact(
            pts in prop::collection::vec(prop::array::uniform3(-1e6f64..1e6), 3..20),
        ) {
            let n = pts.len() as u32;
            let tris: Vec<[u32; 3]> = (0..n - 2).map(|i| [i, i + 1, i + 2]).collect();
            let m = TriangleMesh::new(pts, tris).unwrap();
            let back = parse_obj(&to_obj_string(&m), "mem").unwrap();
            prop_assert_eq!(back.vertices(), m.vertices());
            prop_assert_eq!(back.triangles(), m.triangles());
        }
    }
}
