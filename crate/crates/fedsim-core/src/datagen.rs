//! Synthetic labeled datasets and heterogeneous client splits.
//!
//! Training data is a mixture of Gaussian clusters, one per class, split
//! across clients by drawing per-class client proportions from a
//! Dirichlet distribution. Smaller concentration means more label skew.

use crate::error::{CoreError, Result};
use crate::numerics::RngStream;

/// Dense labeled dataset: `n` rows of `p` features plus an integer class
/// label in `[0, classes)`.
#[derive(Debug, Clone)]
pub struct Dataset {
    features: Vec<f64>, // row-major n x p
    labels: Vec<usize>,
    feature_dim: usize,
    classes: usize,
}

impl Dataset {
    pub fn new(features: Vec<f64>, labels: Vec<usize>, feature_dim: usize, classes: usize) -> Result<Self> {
        if feature_dim == 0 || classes == 0 {
            return Err(CoreError::InvalidArgument(
                "feature_dim and classes must be positive".into(),
            ));
        }
        if labels.is_empty() || features.len() != labels.len() * feature_dim {
            return Err(CoreError::InvalidArgument(format!(
                "feature matrix {}x{} does not match {} labels",
                features.len() / feature_dim.max(1),
                feature_dim,
                labels.len()
            )));
        }
        for &l in &labels {
            if l >= classes {
                return Err(CoreError::LabelOutOfRange {
                    label: l as i64,
                    classes,
                });
            }
        }
        Ok(Dataset {
            features,
            labels,
            feature_dim,
            classes,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn feature_dim(&self) -> usize {
        self.feature_dim
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.feature_dim..(i + 1) * self.feature_dim]
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    /// Per-class sample counts.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.classes];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Load from CSV. Expected schema: a header row, any number of numeric
    /// feature columns, and a final integer column named `label`.
    pub fn from_csv_str(text: &str, classes: usize) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or(CoreError::EmptyInput("csv has no header row"))?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        if cols.len() < 2 || *cols.last().unwrap() != "label" {
            return Err(CoreError::CsvParse {
                line: 1,
                message: "expected feature columns followed by a final `label` column".into(),
            });
        }
        let feature_dim = cols.len() - 1;
        let mut features = Vec::new();
        let mut labels = Vec::new();
        for (i, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != cols.len() {
                return Err(CoreError::CsvParse {
                    line: i + 1,
                    message: format!("expected {} fields, found {}", cols.len(), fields.len()),
                });
            }
            for f in &fields[..feature_dim] {
                let v: f64 = f.parse().map_err(|_| CoreError::CsvParse {
                    line: i + 1,
                    message: format!("bad feature value {f:?}"),
                })?;
                features.push(v);
            }
            let label: i64 = fields[feature_dim].parse().map_err(|_| CoreError::CsvParse {
                line: i + 1,
                message: format!("bad label value {:?}", fields[feature_dim]),
            })?;
            if label < 0 || label as usize >= classes {
                return Err(CoreError::LabelOutOfRange { label, classes });
            }
            labels.push(label as usize);
        }
        Dataset::new(features, labels, feature_dim, classes)
    }

    pub fn from_csv_path(path: &std::path::Path, classes: usize) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Dataset::from_csv_str(&text, classes)
    }
}

/// Disjoint index shards, one per client.
#[derive(Debug, Clone)]
pub struct Partition {
    shards: Vec<Vec<usize>>,
}

impl Partition {
    pub fn num_clients(&self) -> usize {
        self.shards.len()
    }

    pub fn shard(&self, client: usize) -> &[usize] {
        &self.shards[client]
    }

    pub fn shards(&self) -> &[Vec<usize>] {
        &self.shards
    }
}

/// Generate `classes` Gaussian clusters of `n_per_class` points each.
/// Cluster means have norm `sep` with directions drawn from the stream;
/// samples add unit-covariance noise. Deterministic given the stream.
pub fn generate_gaussian_classes(
    n_per_class: usize,
    feature_dim: usize,
    classes: usize,
    sep: f64,
    rng: &mut RngStream,
) -> Result<Dataset> {
    if n_per_class == 0 || feature_dim == 0 || classes == 0 {
        return Err(CoreError::InvalidArgument(
            "n_per_class, feature_dim and classes must all be positive".into(),
        ));
    }
    if !(sep > 0.0) {
        return Err(CoreError::InvalidArgument(format!(
            "separation must be positive, got {sep}"
        )));
    }
    let mut means = Vec::with_capacity(classes);
    for _ in 0..classes {
        let mut dir: Vec<f64> = (0..feature_dim).map(|_| rng.normal()).collect();
        let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            dir[0] = 1.0;
        } else {
            for v in &mut dir {
                *v /= norm;
            }
        }
        for v in &mut dir {
            *v *= sep;
        }
        means.push(dir);
    }
    let n = n_per_class * classes;
    let mut features = Vec::with_capacity(n * feature_dim);
    let mut labels = Vec::with_capacity(n);
    for (c, mean) in means.iter().enumerate() {
        for _ in 0..n_per_class {
            for m in mean {
                features.push(m + rng.normal());
            }
            labels.push(c);
        }
    }
    Dataset::new(features, labels, feature_dim, classes)
}

/// Split a dataset across `m` clients with Dirichlet(beta) label skew.
///
/// For each class, client proportions are drawn from Dirichlet(beta * 1_m)
/// and the class's (shuffled) indices are allocated by largest-remainder
/// rounding, ties broken by client index. If a shard ends up empty, one
/// sample is moved from the largest shard.
pub fn dirichlet_partition(
    ds: &Dataset,
    m: usize,
    beta: f64,
    rng: &mut RngStream,
) -> Result<Partition> {
    if m == 0 {
        return Err(CoreError::InvalidArgument("need at least one client".into()));
    }
    if !(beta > 0.0) {
        return Err(CoreError::InvalidArgument(format!(
            "dirichlet concentration must be positive, got {beta}"
        )));
    }
    if ds.len() < m {
        return Err(CoreError::ImpossiblePartition {
            samples: ds.len(),
            clients: m,
        });
    }

    // Group indices by class, then shuffle within each class.
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); ds.classes()];
    for i in 0..ds.len() {
        by_class[ds.label(i)].push(i);
    }
    let mut shards: Vec<Vec<usize>> = vec![Vec::new(); m];
    for class_indices in by_class.iter_mut() {
        if class_indices.is_empty() {
            continue;
        }
        let order = rng.partial_permutation(class_indices.len(), class_indices.len());
        let shuffled: Vec<usize> = order.iter().map(|&k| class_indices[k]).collect();

        let mut weights: Vec<f64> = (0..m).map(|_| rng.gamma(beta)).collect();
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            weights = vec![1.0; m];
        }
        let total: f64 = weights.iter().sum();
        let counts = largest_remainder(&weights, total, shuffled.len());

        let mut cursor = 0;
        for (client, &count) in counts.iter().enumerate() {
            shards[client].extend_from_slice(&shuffled[cursor..cursor + count]);
            cursor += count;
        }
    }

    // Empty-shard repair: move one sample from the largest shard.
    loop {
        let empty = match shards.iter().position(|s| s.is_empty()) {
            Some(i) => i,
            None => break,
        };
        let largest = shards
            .iter()
            .enumerate()
            .max_by(|(ai, a), (bi, b)| a.len().cmp(&b.len()).then(bi.cmp(ai)))
            .map(|(i, _)| i)
            .unwrap();
        let moved = shards[largest].pop().ok_or(CoreError::ImpossiblePartition {
            samples: ds.len(),
            clients: m,
        })?;
        shards[empty].push(moved);
    }

    Ok(Partition { shards })
}

/// Allocate `total` items proportionally to `weights` using largest
/// remainders; ties broken by lowest index.
fn largest_remainder(weights: &[f64], weight_sum: f64, total: usize) -> Vec<usize> {
    let m = weights.len();
    let mut counts = vec![0usize; m];
    let mut remainders: Vec<(f64, usize)> = Vec::with_capacity(m);
    let mut assigned = 0usize;
    for (i, &w) in weights.iter().enumerate() {
        let exact = w / weight_sum * total as f64;
        let floor = exact.floor() as usize;
        counts[i] = floor;
        assigned += floor;
        remainders.push((exact - floor as f64, i));
    }
    // Highest remainder first; equal remainders go to the lower index.
    remainders.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
    let mut leftover = total - assigned;
    for (_, i) in remainders {
        if leftover == 0 {
            break;
        }
        counts[i] += 1;
        leftover -= 1;
    }
    counts
}

/// Uniform minibatch from a shard: without replacement when the batch fits,
/// with replacement otherwise. Deterministic given the stream.
pub fn sample_minibatch(shard: &[usize], batch: usize, rng: &mut RngStream) -> Result<Vec<usize>> {
    if shard.is_empty() {
        return Err(CoreError::EmptyInput("minibatch from empty shard"));
    }
    if batch == 0 {
        return Err(CoreError::InvalidArgument("batch must be at least 1".into()));
    }
    if batch <= shard.len() {
        let picks = rng.partial_permutation(shard.len(), batch);
        Ok(picks.into_iter().map(|k| shard[k]).collect())
    } else {
        Ok((0..batch).map(|_| shard[rng.index(shard.len())]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::StreamId;

    fn rng(seed: u64) -> RngStream {
        RngStream::new(seed, StreamId::Data)
    }

    #[test]
    fn gaussian_classes_shapes_and_determinism() {
        let mut r1 = rng(1);
        let ds1 = generate_gaussian_classes(10, 2, 2, 4.0, &mut r1).unwrap();
        assert_eq!(ds1.len(), 20);
        assert_eq!(ds1.feature_dim(), 2);
        assert_eq!(ds1.class_counts(), vec![10, 10]);

        let mut r2 = rng(1);
        let ds2 = generate_gaussian_classes(10, 2, 2, 4.0, &mut r2).unwrap();
        assert_eq!(ds1.row(7), ds2.row(7));
        assert_eq!(ds1.label(7), ds2.label(7));
    }

    #[test]
    fn gaussian_class_means_separated() {
        // Sample means of the two clusters should differ by roughly the
        // distance between their true means; with sep=4 and orthogonal-ish
        // directions that distance is at least sep (up to sampling noise).
        let mut r = rng(1);
        let ds = generate_gaussian_classes(200, 2, 2, 4.0, &mut r).unwrap();
        let mut mean = [[0.0f64; 2]; 2];
        let mut count = [0usize; 2];
        for i in 0..ds.len() {
            let c = ds.label(i);
            mean[c][0] += ds.row(i)[0];
            mean[c][1] += ds.row(i)[1];
            count[c] += 1;
        }
        for c in 0..2 {
            mean[c][0] /= count[c] as f64;
            mean[c][1] /= count[c] as f64;
        }
        let dist =
            ((mean[0][0] - mean[1][0]).powi(2) + (mean[0][1] - mean[1][1]).powi(2)).sqrt();
        assert!(dist > 2.0, "clusters not separated: {dist}");
        for c in 0..2 {
            let norm = (mean[c][0].powi(2) + mean[c][1].powi(2)).sqrt();
            assert!((norm - 4.0).abs() < 0.5, "mean norm {norm} far from sep");
        }
    }

    #[test]
    fn gaussian_degenerate_single_point() {
        let mut r = rng(0);
        let ds = generate_gaussian_classes(1, 1, 1, 1.0, &mut r).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds.label(0), 0);
    }

    #[test]
    fn gaussian_rejects_bad_sizes() {
        let mut r = rng(0);
        assert!(generate_gaussian_classes(0, 2, 2, 1.0, &mut r).is_err());
        assert!(generate_gaussian_classes(1, 2, 2, 0.0, &mut r).is_err());
    }

    #[test]
    fn partition_single_client_gets_everything() {
        let mut r = rng(1);
        let ds = generate_gaussian_classes(10, 2, 3, 4.0, &mut r).unwrap();
        let part = dirichlet_partition(&ds, 1, 0.6, &mut r).unwrap();
        let mut all: Vec<usize> = part.shard(0).to_vec();
        all.sort_unstable();
        assert_eq!(all, (0..30).collect::<Vec<_>>());
    }

    #[test]
    fn partition_large_beta_is_nearly_balanced() {
        // beta -> infinity surrogate: per-class counts within +-1 of n_c/m.
        for seed in 0..5 {
            let mut r = rng(seed);
            let ds = generate_gaussian_classes(100, 2, 4, 4.0, &mut r).unwrap();
            let part = dirichlet_partition(&ds, 4, 1e6, &mut r).unwrap();
            for shard in part.shards() {
                let mut per_class = vec![0usize; 4];
                for &i in shard {
                    per_class[ds.label(i)] += 1;
                }
                for &c in &per_class {
                    assert!(
                        (c as i64 - 25).abs() <= 1,
                        "seed {seed}: class count {c} not within 1 of 25"
                    );
                }
            }
        }
    }

    #[test]
    fn partition_disjoint_covering_nonempty() {
        let mut r = rng(9);
        let ds = generate_gaussian_classes(500, 4, 10, 4.0, &mut r).unwrap();
        let part = dirichlet_partition(&ds, 100, 0.6, &mut r).unwrap();
        let mut seen = vec![false; ds.len()];
        for shard in part.shards() {
            assert!(!shard.is_empty());
            for &i in shard {
                assert!(!seen[i], "index {i} assigned twice");
                seen[i] = true;
            }
        }
        assert!(seen.iter().all(|&s| s), "union does not cover the dataset");
    }

    #[test]
    fn partition_fewer_samples_than_clients_errors() {
        let mut r = rng(1);
        let ds = generate_gaussian_classes(1, 2, 2, 4.0, &mut r).unwrap();
        assert!(matches!(
            dirichlet_partition(&ds, 3, 0.6, &mut r).unwrap_err(),
            CoreError::ImpossiblePartition { .. }
        ));
    }

    #[test]
    fn minibatch_full_shard_is_permutation() {
        let shard = vec![3, 5, 9, 11];
        let mut r = rng(2);
        let mut batch = sample_minibatch(&shard, 4, &mut r).unwrap();
        batch.sort_unstable();
        assert_eq!(batch, shard);
    }

    #[test]
    fn minibatch_singleton() {
        let mut r = rng(2);
        assert_eq!(sample_minibatch(&[7], 1, &mut r).unwrap(), vec![7]);
    }

    #[test]
    fn minibatch_seeded_repeat_identical() {
        let shard: Vec<usize> = (0..50).collect();
        let mut a = rng(4);
        let mut b = rng(4);
        assert_eq!(
            sample_minibatch(&shard, 10, &mut a).unwrap(),
            sample_minibatch(&shard, 10, &mut b).unwrap()
        );
    }

    #[test]
    fn minibatch_with_replacement_when_oversized() {
        let shard = vec![1, 2, 3];
        let mut r = rng(5);
        let batch = sample_minibatch(&shard, 10, &mut r).unwrap();
        assert_eq!(batch.len(), 10);
        assert!(batch.iter().all(|i| shard.contains(i)));
    }

    #[test]
    fn minibatch_empty_shard_errors() {
        let mut r = rng(5);
        assert!(sample_minibatch(&[], 1, &mut r).is_err());
    }

    #[test]
    fn largest_remainder_exact_and_tie_break() {
        // Equal weights, total not divisible: lower indices get the extras.
        let counts = largest_remainder(&[1.0, 1.0, 1.0], 3.0, 10);
        assert_eq!(counts, vec![4, 3, 3]);
        assert_eq!(largest_remainder(&[2.0, 1.0, 1.0], 4.0, 8), vec![4, 2, 2]);
    }

    #[test]
    fn csv_round_trip_small() {
        let text = "f0,f1,label\n1.5,-2.0,0\n0.25,3.5,1\n";
        let ds = Dataset::from_csv_str(text, 2).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.row(0), &[1.5, -2.0]);
        assert_eq!(ds.label(1), 1);
    }

    #[test]
    fn csv_rejects_bad_label_and_schema() {
        assert!(Dataset::from_csv_str("f0,label\n1.0,5\n", 2).is_err());
        assert!(Dataset::from_csv_str("f0,target\n1.0,0\n", 2).is_err());
        assert!(Dataset::from_csv_str("f0,label\n1.0\n", 2).is_err());
    }
}
