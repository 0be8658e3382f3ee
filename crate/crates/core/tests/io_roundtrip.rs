use std::fs;

use fse3d::io::{read_mask, read_raw, read_volume, write_mask, write_volume, PixelFormat, RawVideoSpec};
use fse3d::patterns::gen_lenses;
use fse3d::{Dims, Error, HoleMask, Volume};

#[test]
fn y8_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let bytes: Vec<u8> = (0..16 * 8 * 3).map(|i| (i * 37 % 256) as u8).collect();
    let src = dir.path().join("a.y");
    fs::write(&src, &bytes).unwrap();
    let volume: Volume = read_volume(&RawVideoSpec::new(&src, 16, 8, PixelFormat::Y8)).unwrap();
    assert_eq!(volume.dims(), Dims::new(16, 8, 3));
    let dst = dir.path().join("b.y");
    write_volume(&volume, &RawVideoSpec::new(&dst, 16, 8, PixelFormat::Y8), None).unwrap();
    assert_eq!(fs::read(dst).unwrap(), bytes);
}

#[test]
fn frame_count_follows_file_size() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.yuv");
    fs::write(&path, vec![7u8; 416 * 240 * 3 / 2 * 48]).unwrap();
    let raw = read_raw::<f64>(&RawVideoSpec::new(&path, 416, 240, PixelFormat::Yuv420p)).unwrap();
    assert_eq!(raw.luma.dims().frames, 48);
    assert_eq!(raw.chroma.unwrap().len(), 48);
}

#[test]
fn chroma_passes_through() {
    let dir = tempfile::tempdir().unwrap();
    let bytes: Vec<u8> = (0..8 * 4 * 3 / 2 * 2).map(|i| (i * 11 % 251) as u8).collect();
    let src = dir.path().join("a.yuv");
    fs::write(&src, &bytes).unwrap();
    let spec = RawVideoSpec::new(&src, 8, 4, PixelFormat::Yuv420p);
    let raw = read_raw::<f64>(&spec).unwrap();
    let dst = dir.path().join("b.yuv");
    write_volume(
        &raw.luma,
        &RawVideoSpec {
            path: dst.clone(),
            ..spec
        },
        raw.chroma.as_deref(),
    )
    .unwrap();
    assert_eq!(fs::read(dst).unwrap(), bytes);
}

#[test]
fn empty_and_truncated_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.y");
    fs::write(&empty, []).unwrap();
    let err = read_volume::<f64>(&RawVideoSpec::new(&empty, 4, 4, PixelFormat::Y8)).unwrap_err();
    assert!(matches!(err, Error::Format { offset: 0, .. }), "{err}");

    let short = dir.path().join("short.y");
    fs::write(&short, [0u8; 40]).unwrap();
    let err = read_volume::<f64>(&RawVideoSpec::new(&short, 4, 4, PixelFormat::Y8).with_frames(3)).unwrap_err();
    assert!(matches!(err, Error::Format { offset: 40, .. }), "{err}");
    let err = read_volume::<f64>(&RawVideoSpec::new(&short, 4, 4, PixelFormat::Y8)).unwrap_err();
    assert!(matches!(err, Error::Format { offset: 32, .. }), "{err}");
}

#[test]
fn mask_with_foreign_byte_reports_offset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.raw");
    let mut bytes = vec![0u8; 4 * 4 * 2];
    bytes[5] = 255;
    bytes[21] = 7;
    fs::write(&path, &bytes).unwrap();
    let err = read_mask(&path, Dims::new(4, 4, 2)).unwrap_err();
    assert!(matches!(err, Error::Format { offset: 21, .. }), "{err}");
}

#[test]
fn generated_mask_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lens.raw");
    let dims = Dims::new(64, 48, 8);
    let mask = gen_lenses(dims, 5, 10.0, 3.0, 9).unwrap();
    write_mask(&path, &mask).unwrap();
    let back: HoleMask = read_mask(&path, dims).unwrap();
    assert_eq!(back, mask);
    assert!(back.hole_count() > 0);
}
