//! Writes a scene of random cones, loads it back and reports invariants the
//! same way the `lkpolar invariants` command does.

use lkpolar::angle::AngleConfig;
use lkpolar::cli::report::{invariants_table, object_invariants};
use lkpolar::cli::scene::{load_scene, parse_scene};
use lkpolar::crofton::McConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("lkpolar-scene-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("random.json");
    let code = lkpolar::cli::run([
        "lkpolar",
        "sample",
        "--dim",
        "3",
        "--generators",
        "4",
        "--count",
        "2",
        "--seed",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);

    let (scene, objects) = load_scene(&path)?;
    let (again, _) = parse_scene(&scene.to_json(), &path)?;
    println!("round trip identical: {}", again == scene);

    let mut items = Vec::new();
    for obj in &objects {
        items.extend(object_invariants(obj, &AngleConfig::default(), &McConfig::default())?);
    }
    print!("{}", invariants_table(&items));
    Ok(())
}
