#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <optional>

#include "mebench/analysis.hpp"
#include "mebench/report.hpp"
#include "mebench/video_io.hpp"

namespace py = pybind11;
using namespace mebench;

namespace {

py::array_t<std::uint8_t> frame_to_array(const Frame& f) {
    py::array_t<std::uint8_t> arr({f.height, f.width});
    std::memcpy(arr.mutable_data(), f.luma.data(), f.luma.size());
    return arr;
}

Sequence sequence_from_array(const py::array_t<std::uint8_t, py::array::c_style |
                                                                 py::array::forcecast>& stack,
                             const std::string& name) {
    if (stack.ndim() != 3)
        throw py::value_error("expected a (frames, height, width) uint8 array");
    Sequence seq;
    seq.name = name;
    const auto frames = stack.shape(0);
    const auto height = static_cast<int>(stack.shape(1));
    const auto width = static_cast<int>(stack.shape(2));
    for (py::ssize_t f = 0; f < frames; ++f) {
        Frame frame(width, height, static_cast<int>(f));
        std::memcpy(frame.luma.data(), stack.data(f, 0, 0),
                    static_cast<std::size_t>(width) * height);
        seq.append(std::move(frame));
    }
    return seq;
}

PredictorSet preds_from_list(const std::vector<std::pair<int, int>>& mvs) {
    if (mvs.empty() || mvs.size() > 5)
        throw py::value_error("expected between one and five predictor vectors");
    PredictorSet p;
    for (std::size_t i = 0; i < 5; ++i) {
        const auto& [x, y] = mvs[std::min(i, mvs.size() - 1)];
        p.mv[i] = {x, y};
        p.available[i] = i < mvs.size();
    }
    return p;
}

EstimatorConfig make_config(const std::string& algo, int w, int n, int d,
                            const std::string& criterion, bool psa_count_overlaps) {
    EstimatorConfig cfg;
    cfg.algo = parse_algorithm(algo);
    cfg.w_max = w;
    cfg.block_n = n;
    cfg.d = d;
    cfg.criterion = parse_criterion(criterion);
    cfg.psa_count_overlaps = psa_count_overlaps;
    cfg.validate();
    return cfg;
}

struct PyField {
    int frame_index = 0;
    int rows = 0;
    int cols = 0;
    std::int64_t total_nsp = 0;
    double mean_nsp = 0.0;
    py::array_t<int> mvs;         // (rows, cols, 2) with x then y
    py::array_t<double> costs;    // (rows, cols)
    py::array_t<std::int64_t> nsp;  // (rows, cols)
};

PyField field_to_py(const EstimatedFrame& ef) {
    PyField out;
    out.frame_index = ef.field.frame_index;
    out.rows = ef.field.rows;
    out.cols = ef.field.cols;
    out.total_nsp = ef.stats.total_nsp;
    out.mean_nsp = ef.stats.mean_nsp;
    out.mvs = py::array_t<int>({ef.field.rows, ef.field.cols, 2});
    out.costs = py::array_t<double>({ef.field.rows, ef.field.cols});
    out.nsp = py::array_t<std::int64_t>({ef.field.rows, ef.field.cols});
    auto mv = out.mvs.mutable_unchecked<3>();
    auto cost = out.costs.mutable_unchecked<2>();
    auto nsp = out.nsp.mutable_unchecked<2>();
    for (int r = 0; r < ef.field.rows; ++r) {
        for (int c = 0; c < ef.field.cols; ++c) {
            const MatchResult& m = ef.field.at(r, c);
            mv(r, c, 0) = m.mv.x;
            mv(r, c, 1) = m.mv.y;
            cost(r, c) = m.cost.value();
            nsp(r, c) = m.nsp;
        }
    }
    return out;
}

py::object optional_to_py(const std::optional<double>& v) {
    if (v) return py::float_(*v);
    return py::none();
}

py::dict report_to_dict(const SequenceReport& r) {
    py::dict d;
    d["sequence"] = r.sequence;
    d["algo"] = to_string(r.config.algo);
    d["config"] = py::dict(py::arg("w") = r.config.w_max, py::arg("n") = r.config.block_n,
                           py::arg("d") = r.config.d,
                           py::arg("criterion") = to_string(r.config.criterion));
    py::list frames;
    for (std::size_t i = 0; i < r.frames.size(); ++i) {
        py::dict f;
        f["index"] = r.frames[i].frame_index;
        f["mse"] = r.frames[i].mse;
        f["psnr_db"] = optional_to_py(r.frames[i].psnr_db);
        f["nsp_total"] = r.frame_stats[i].total_nsp;
        frames.append(std::move(f));
    }
    d["frames"] = std::move(frames);
    d["mean_psnr_db"] = optional_to_py(r.mean_psnr_db);
    d["mean_mse"] = r.mean_mse;
    d["mean_nsp_per_block"] = r.mean_nsp_per_block;
    d["sur_pct"] = optional_to_py(r.sur_pct);
    d["psnr_frames_excluded"] = r.psnr_excluded;
    return d;
}

}  // namespace

PYBIND11_MODULE(mebench, m) {
    m.doc() = "Block-matching motion estimation with adaptive search areas";
    m.attr("__version__") = kToolVersion;

    py::class_<Sequence>(m, "Sequence")
        .def_readonly("name", &Sequence::name)
        .def_readonly("width", &Sequence::width)
        .def_readonly("height", &Sequence::height)
        .def("__len__", [](const Sequence& s) { return s.frame_count(); })
        .def("frame", [](const Sequence& s, std::size_t i) {
            if (i >= s.frame_count()) throw py::index_error();
            return frame_to_array(s.frames[i]);
        });

    py::class_<PyField>(m, "MotionFieldResult")
        .def_readonly("frame_index", &PyField::frame_index)
        .def_readonly("rows", &PyField::rows)
        .def_readonly("cols", &PyField::cols)
        .def_readonly("total_nsp", &PyField::total_nsp)
        .def_readonly("mean_nsp", &PyField::mean_nsp)
        .def_readonly("mvs", &PyField::mvs)
        .def_readonly("costs", &PyField::costs)
        .def_readonly("nsp", &PyField::nsp);

    m.def("synth",
          [](const std::string& pattern, std::pair<int, int> mv, int width, int height,
             int frames, std::uint64_t seed) {
              SynthSpec spec;
              spec.pattern = parse_synth_pattern(pattern);
              spec.true_mv = {mv.first, mv.second};
              spec.width = width;
              spec.height = height;
              spec.frame_count = frames;
              spec.seed = seed;
              return synth(spec);
          },
          py::arg("pattern") = "translate", py::arg("mv") = std::pair<int, int>{0, 0},
          py::arg("width") = 64, py::arg("height") = 64, py::arg("frames") = 5,
          py::arg("seed") = 0,
          "Deterministic synthetic sequence with known ground-truth motion.");

    m.def("sequence_from_array", &sequence_from_array, py::arg("stack"),
          py::arg("name") = "array",
          "Wrap a (frames, height, width) uint8 array as a sequence.");

    m.def("load_yuv420",
          [](const std::string& path, int width, int height, int max_frames) {
              return load_yuv420(path, width, height, max_frames, nullptr);
          },
          py::arg("path"), py::arg("width"), py::arg("height"), py::arg("max_frames") = 30);
    m.def("load_y4m", &load_y4m, py::arg("path"), py::arg("max_frames") = 30);
    m.def("write_yuv420", &write_yuv420, py::arg("path"), py::arg("sequence"));

    m.def("estimate",
          [](const Sequence& seq, const std::string& algo, int w, int n, int d,
             const std::string& criterion, bool psa_count_overlaps) {
              const EstimatorConfig cfg =
                  make_config(algo, w, n, d, criterion, psa_count_overlaps);
              std::vector<PyField> out;
              for (const EstimatedFrame& ef : estimate_sequence(seq, cfg))
                  out.push_back(field_to_py(ef));
              return out;
          },
          py::arg("sequence"), py::arg("algo") = "pvssa", py::arg("w") = 15,
          py::arg("n") = 16, py::arg("d") = 3, py::arg("criterion") = "sae",
          py::arg("psa_count_overlaps") = false,
          "Per-frame motion fields for frames 1..count-1 against their predecessors.");

    m.def("analyze",
          [](const Sequence& seq, const std::string& algo, int w, int n, int d,
             const std::string& criterion, bool psa_count_overlaps) {
              const EstimatorConfig cfg =
                  make_config(algo, w, n, d, criterion, psa_count_overlaps);
              return report_to_dict(analyze_sequence(seq, cfg));
          },
          py::arg("sequence"), py::arg("algo") = "pvssa", py::arg("w") = 15,
          py::arg("n") = 16, py::arg("d") = 3, py::arg("criterion") = "sae",
          py::arg("psa_count_overlaps") = false,
          "Estimate, reconstruct and score a sequence; returns the report as a dict.");

    m.def("reconstruct",
          [](const Sequence& seq, const std::string& algo, int w, int n, int d,
             const std::string& criterion, bool psa_count_overlaps) {
              const EstimatorConfig cfg =
                  make_config(algo, w, n, d, criterion, psa_count_overlaps);
              std::vector<py::array_t<std::uint8_t>> out;
              for (const EstimatedFrame& ef : estimate_sequence(seq, cfg)) {
                  const Frame recon = reconstruct(
                      seq.frames[std::size_t(ef.field.frame_index) - 1], ef.field,
                      cfg.block_n);
                  out.push_back(frame_to_array(recon));
              }
              return out;
          },
          py::arg("sequence"), py::arg("algo") = "pvssa", py::arg("w") = 15,
          py::arg("n") = 16, py::arg("d") = 3, py::arg("criterion") = "sae",
          py::arg("psa_count_overlaps") = false,
          "Motion-compensated reconstructions of frames 1..count-1.");

    m.def("pvssa_rect",
          [](const std::vector<std::pair<int, int>>& preds, int d) {
              const SearchRect r = pvssa_rect(preds_from_list(preds), d);
              return py::make_tuple(r.x_min, r.x_max, r.y_min, r.y_max);
          },
          py::arg("predictors"), py::arg("d"),
          "Expanded predictor bounding box as (x_min, x_max, y_min, y_max).");

    m.def("psa_region_points",
          [](const std::vector<std::pair<int, int>>& preds, int r) {
              std::vector<std::pair<int, int>> out;
              for (MotionVec p : psa_regions(preds_from_list(preds), r))
                  out.emplace_back(p.x, p.y);
              return out;
          },
          py::arg("predictors"), py::arg("r") = 2,
          "Deduplicated union of the four squares around the spatial predictors.");

    m.def("displacement_d",
          [](const std::vector<std::pair<int, int>>& preds, std::pair<int, int> mv) {
              return displacement_d(preds_from_list(preds), {mv.first, mv.second});
          },
          py::arg("predictors"), py::arg("mv"),
          "Chebyshev distance to the nearest spatial predictor.");

    m.def("speedup", &speedup, py::arg("nsp_fs"), py::arg("nsp_alg"),
          "Search-point savings versus full search, in percent.");

    m.def("pr_table",
          [](const Sequence& seq, int d_max, int w, int n, const std::string& criterion) {
              const EstimatorConfig cfg = make_config("fs", w, n, 3, criterion, false);
              std::vector<MotionField> fields;
              for (const EstimatedFrame& ef : estimate_sequence(seq, cfg))
                  fields.push_back(ef.field);
              return pr_of_d_table(fields, d_max);
          },
          py::arg("sequence"), py::arg("d_max") = 5, py::arg("w") = 15, py::arg("n") = 16,
          py::arg("criterion") = "mae",
          "Rows (d, probability) of rectangle containment over full-search fields.");

    m.def("chung_table",
          [](const Sequence& seq, int d_max, int w, int n, const std::string& criterion) {
              const EstimatorConfig cfg = make_config("fs", w, n, 3, criterion, false);
              std::vector<MotionField> fields;
              for (const EstimatedFrame& ef : estimate_sequence(seq, cfg))
                  fields.push_back(ef.field);
              const ChungTable t =
                  chung_probabilities({fields}, d_max > 0 ? d_max : 2 * w);
              py::dict out;
              out["average"] = t.average;
              out["accumulated"] = t.accumulated;
              return out;
          },
          py::arg("sequence"), py::arg("d_max") = 0, py::arg("w") = 15, py::arg("n") = 16,
          py::arg("criterion") = "mae",
          "Distribution of the nearest-predictor distance D over full-search fields.");
}
