#pragma once

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "leafquant/config.hpp"
#include "leafquant/image_io.hpp"
#include "leafquant/image_write.hpp"
#include "leafquant/quantify.hpp"
#include "leafquant/synthgen.hpp"

namespace leafquant {

struct AnalyzeOptions {
  std::filesystem::path input_dir;
  std::filesystem::path out_dir;
  std::optional<std::filesystem::path> config_path;
  bool dump_masks = false;
  std::optional<double> min_quality;  // overrides segmentation.quality_min
};

namespace detail {

inline int worker_count(std::size_t jobs) {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("LEAFQUANT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<long>(n, cap);
  }
  return std::max(1, std::min<int>(n, static_cast<int>(jobs)));
}

struct AnalyzeJob {
  std::string region;
  std::string id;
  std::filesystem::path path;
};

inline bool image_extension(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

/// One region per subdirectory; candidate images sorted by path so job order
/// never depends on directory iteration order.
inline std::vector<AnalyzeJob> scan_input_tree(const std::filesystem::path& input_dir) {
  std::vector<AnalyzeJob> jobs;
  if (!std::filesystem::is_directory(input_dir)) return jobs;

  std::vector<std::filesystem::path> regions;
  for (const auto& entry : std::filesystem::directory_iterator(input_dir))
    if (entry.is_directory()) regions.push_back(entry.path());
  std::sort(regions.begin(), regions.end());

  for (const auto& region_dir : regions) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(region_dir))
      if (entry.is_regular_file() && image_extension(entry.path())) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files)
      jobs.push_back({region_dir.filename().string(), f.stem().string(), f});
  }
  return jobs;
}

}  // namespace detail

/// Batch analysis: decode every image under input_dir/<region>/, screen by
/// quality, quantify the survivors and write images.csv, regions.csv and
/// report.json into out_dir. Returns the process exit status: 0 ok,
/// 2 unreadable config, 3 empty input tree, 1 I/O failure.
inline int run_analyze(const AnalyzeOptions& opt, std::ostream& diag) {
  RunConfig cfg;
  if (opt.config_path) {
    try {
      cfg = load_run_config(*opt.config_path);
    } catch (const ConfigError& e) {
      diag << "error: " << e.what() << "\n";
      return 2;
    }
  }
  if (opt.min_quality) {
    cfg.segmentation.quality_min = *opt.min_quality;
    try {
      cfg.segmentation.validate();
    } catch (const ConfigError& e) {
      diag << "error: " << e.what() << "\n";
      return 2;
    }
  }

  std::vector<detail::AnalyzeJob> jobs = detail::scan_input_tree(opt.input_dir);
  {
    // Duplicate stems within a region would collide in the reports.
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<detail::AnalyzeJob> unique;
    for (auto& job : jobs) {
      if (seen.emplace(job.region, job.id).second) {
        unique.push_back(std::move(job));
      } else {
        diag << "skipped " << job.path.string() << " (duplicate image id '" << job.id << "')\n";
      }
    }
    jobs = std::move(unique);
  }
  if (jobs.empty()) {
    diag << "error: no region subdirectories with PNG/JPEG images under "
         << opt.input_dir.string() << "\n";
    return 3;
  }

  const std::filesystem::path mask_dir = opt.out_dir / "masks";
  try {
    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir);
    if (!std::filesystem::is_directory(opt.out_dir))
      throw IoError("cannot create output directory: " + opt.out_dir.string());
    if (opt.dump_masks)
      for (const auto& job : jobs) std::filesystem::create_directories(mask_dir / job.region);
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }

  struct Outcome {
    bool decoded = false;
    ImageRecord record;
    std::string error;
  };
  std::vector<Outcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> io_failed{false};
  std::string io_error;
  std::mutex io_error_mu;

  const auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      const detail::AnalyzeJob& job = jobs[i];
      try {
        const RgbImage image = load_image(job.path);
        ImageReport report =
            quantify_image(image, job.id, cfg.segmentation, cfg.calibration);
        if (opt.dump_masks) {
          const BinaryMask green = green_mask(rgb_to_hsv(image), cfg.segmentation);
          const BinaryMask defect = defect_mask(rgb_to_gray(image), green, cfg.segmentation);
          save_png(green, mask_dir / job.region / (job.id + "_green.png"));
          save_png(defect, mask_dir / job.region / (job.id + "_defect.png"));
        }
        outcomes[i] = {true, {job.region, std::move(report)}, {}};
      } catch (const IoError& e) {
        const std::scoped_lock lock(io_error_mu);
        io_failed = true;
        io_error = e.what();
      } catch (const Error& e) {
        outcomes[i] = {false, {}, e.what()};
      }
    }
  };

  const int workers = detail::worker_count(jobs.size());
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  if (io_failed) {
    diag << "error: " << io_error << "\n";
    return 1;
  }

  std::int64_t skipped = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i)
    if (!outcomes[i].decoded) {
      diag << "skipped " << jobs[i].path.string() << " (" << outcomes[i].error << ")\n";
      ++skipped;
    }

  // Quality screen over the decoded images, keyed region/id to stay unique.
  std::vector<std::pair<std::string, double>> scored;
  for (const Outcome& o : outcomes)
    if (o.decoded) scored.emplace_back(o.record.region + "/" + o.record.report.image_id,
                                       o.record.report.quality);
  const std::vector<std::string> selected = select_images(scored, cfg.segmentation);
  const std::set<std::string> keep(selected.begin(), selected.end());

  std::vector<ImageRecord> records;
  std::map<std::string, std::vector<ImageReport>> by_region;
  for (const auto& job : jobs) by_region[job.region];  // every scanned region reports
  std::int64_t screened_out = 0;
  for (const Outcome& o : outcomes) {
    if (!o.decoded) continue;
    if (!keep.count(o.record.region + "/" + o.record.report.image_id)) {
      ++screened_out;
      continue;
    }
    by_region[o.record.region].push_back(o.record.report);
    records.push_back(o.record);
  }
  if (screened_out > 0)
    diag << screened_out << " image(s) below quality_min " << cfg.segmentation.quality_min
         << "\n";

  std::vector<RegionReport> regions;
  for (auto& [region, reports] : by_region) {
    std::sort(reports.begin(), reports.end(),
              [](const ImageReport& a, const ImageReport& b) { return a.image_id < b.image_id; });
    regions.push_back(aggregate_region(region, reports));
  }

  try {
    write_reports(std::move(regions), std::move(records), opt.out_dir, skipped);
  } catch (const IoError& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

/// Writes `count` deterministic scenes scene_0.png .. scene_<count-1>.png and
/// truth.json mapping image id to exact ground-truth pixel counts.
inline int run_synth(const std::filesystem::path& out_dir, int count, std::uint32_t seed,
                     std::ostream& diag) {
  try {
    std::filesystem::create_directories(out_dir);
    if (!std::filesystem::is_directory(out_dir))
      throw IoError("cannot create output directory: " + out_dir.string());

    nlohmann::json truth = nlohmann::json::object();
    for (int i = 0; i < count; ++i) {
      const SynthSpec spec = default_spec(seed + static_cast<std::uint32_t>(i));
      const auto [image, gt] = generate_scene(spec);
      const std::string id = "scene_" + std::to_string(i);
      save_png(image, out_dir / (id + ".png"));
      truth[id] = {{"green_px", gt.green_px}, {"defect_px", gt.defect_px}};
    }
    detail::write_file_atomic(out_dir / "truth.json", truth.dump(2) + "\n");
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace leafquant
