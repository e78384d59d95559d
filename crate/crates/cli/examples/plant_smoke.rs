use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use triangulift_cli::plant::{random_tower, PlantConfig};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..30 {
        let config = match i % 3 {
            0 => PlantConfig::random(&mut rng),
            1 => PlantConfig::all_ell(&mut rng),
            _ => PlantConfig::ell_prime(&mut rng),
        };
        eprintln!("gen {i} config {:?}", config);
        let planted = random_tower(&mut rng, &config);
        eprintln!("   rows bottom {}", planted.tower.levels[0].irr.len());
    }
    println!("done");
}
