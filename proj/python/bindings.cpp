#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rebalance/classification.hpp"
#include "rebalance/regression.hpp"
#include "rebalance/synthgen.hpp"

namespace py = pybind11;
using namespace rebalance;

namespace {

py::list column_values(const Column& col) {
    py::list out;
    for (std::size_t r = 0; r < col.size(); ++r) {
        if (col.is_missing(r)) {
            out.append(py::none());
        } else if (col.kind == ColumnKind::Numeric) {
            out.append(col.numbers[r]);
        } else {
            out.append(col.label(r));
        }
    }
    return out;
}

/// Result tuple shared by every strategy: (data, removed rows, added seed rows, warnings).
py::tuple pack(const StrategyOutcome& o) {
    std::vector<std::size_t> seeds;
    for (const auto& a : o.added) seeds.push_back(a.seed);
    return py::make_tuple(o.data, o.removed, seeds, o.warnings);
}

RelevanceFunction relevance(const Dataset& ds, const std::optional<std::vector<std::array<double, 3>>>& points,
                            const std::string& extremes) {
    if (points) {
        std::vector<ControlPoint> cps;
        for (const auto& p : *points) cps.push_back({p[0], p[1], p[2]});
        return RelevanceFunction::from_points(std::move(cps));
    }
    if (ds.has_nominal_target()) throw DataError("relevance needs a numeric target");
    return RelevanceFunction::from_extremes(ds.target_values(), parse_extreme_type(extremes));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Resampling strategies for imbalanced classification and regression tables";

    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    py::class_<Dataset>(m, "Dataset")
        .def_property_readonly("n_rows", &Dataset::n_rows)
        .def_property_readonly("target", &Dataset::target_name)
        .def_property_readonly("names",
                               [](const Dataset& ds) {
                                   std::vector<std::string> names;
                                   for (const auto& c : ds.columns()) names.push_back(c.name);
                                   return names;
                               })
        .def("column", [](const Dataset& ds, const std::string& name) { return column_values(ds.column(name)); })
        .def("class_counts", [](const Dataset& ds) { return class_counts(ds); })
        .def("to_csv", [](const Dataset& ds) { return format_dataset(ds); })
        .def("write_csv", [](const Dataset& ds, const std::string& path) { write_dataset(ds, path); })
        .def("__len__", &Dataset::n_rows)
        .def("__eq__", [](const Dataset& a, const Dataset& b) { return a == b; });

    m.def("parse_csv", [](const std::string& text, const std::string& target) { return parse_dataset(text, target); },
          py::arg("text"), py::arg("target"));
    m.def("read_csv", [](const std::string& path, const std::string& target) { return read_dataset(path, target); },
          py::arg("path"), py::arg("target"));

    m.def("gen_imbc", [](std::size_t n, std::uint64_t seed) { return gen_imbc({n, seed}); }, py::arg("n") = 1000,
          py::arg("seed") = 0);
    m.def("gen_imbr", [](std::size_t n, std::uint64_t seed) { return gen_imbr({n, seed}); }, py::arg("n") = 1000,
          py::arg("seed") = 0);

    m.def(
        "distance",
        [](const Dataset& ds, std::size_t i, std::size_t j, const std::string& dist, std::optional<double> p) {
            NeighborIndex idx(ds, Metric::parse(dist, p));
            if (i >= ds.n_rows() || j >= ds.n_rows()) throw py::index_error("row out of range");
            return idx.distance(i, j);
        },
        py::arg("ds"), py::arg("i"), py::arg("j"), py::arg("dist") = "euclidean", py::arg("p") = py::none());

    m.def(
        "relevance",
        [](const Dataset& ds, const std::vector<double>& ys, std::optional<std::vector<std::array<double, 3>>> points,
           const std::string& extremes) {
            const auto fn = relevance(ds, points, extremes);
            std::vector<double> out;
            for (double y : ys) out.push_back(fn(y));
            return out;
        },
        py::arg("ds"), py::arg("ys"), py::arg("points") = py::none(), py::arg("extremes") = "both");

    // classification
    m.def("rand_under", [](const Dataset& ds, const std::string& c_perc, bool repl, std::uint64_t seed) {
        return pack(rand_under(ds, ClassPercSpec::parse(c_perc), repl, seed));
    }, py::arg("ds"), py::arg("c_perc") = "balance", py::arg("repl") = false, py::arg("seed") = 0);
    m.def("rand_over", [](const Dataset& ds, const std::string& c_perc, bool repl, std::uint64_t seed) {
        return pack(rand_over(ds, ClassPercSpec::parse(c_perc), repl, seed));
    }, py::arg("ds"), py::arg("c_perc") = "balance", py::arg("repl") = true, py::arg("seed") = 0);
    m.def("imp_samp", [](const Dataset& ds, const std::string& c_perc, std::uint64_t seed) {
        return pack(imp_samp(ds, ClassPercSpec::parse(c_perc), seed));
    }, py::arg("ds"), py::arg("c_perc") = "balance", py::arg("seed") = 0);
    m.def("tomek", [](const Dataset& ds, const std::string& dist, const std::string& cl, const std::string& rem) {
        return pack(tomek(ds, Metric::parse(dist), ClassSelector::parse(cl),
                          rem == "maj" ? TomekRemove::Majority : TomekRemove::Both));
    }, py::arg("ds"), py::arg("dist") = "euclidean", py::arg("cl") = "all", py::arg("rem") = "both");
    m.def("cnn", [](const Dataset& ds, const std::string& dist, const std::string& cl, std::uint64_t seed) {
        return pack(cnn(ds, Metric::parse(dist), ClassSelector::parse(cl), seed).outcome);
    }, py::arg("ds"), py::arg("dist") = "euclidean", py::arg("cl") = "smaller", py::arg("seed") = 0);
    m.def("oss", [](const Dataset& ds, const std::string& dist, const std::string& cl, const std::string& start,
                    std::uint64_t seed) {
        return pack(oss(ds, Metric::parse(dist), ClassSelector::parse(cl),
                        start == "tomek" ? OssStart::Tomek : OssStart::CNN, seed));
    }, py::arg("ds"), py::arg("dist") = "euclidean", py::arg("cl") = "smaller", py::arg("start") = "cnn",
       py::arg("seed") = 0);
    m.def("enn", [](const Dataset& ds, std::size_t k, const std::string& dist, const std::string& cl, std::uint64_t seed) {
        return pack(enn(ds, Metric::parse(dist), k, ClassSelector::parse(cl), seed));
    }, py::arg("ds"), py::arg("k") = 3, py::arg("dist") = "euclidean", py::arg("cl") = "all", py::arg("seed") = 0);
    m.def("ncl", [](const Dataset& ds, std::size_t k, const std::string& dist, const std::string& cl, std::uint64_t seed) {
        return pack(ncl(ds, Metric::parse(dist), k, ClassSelector::parse(cl), seed));
    }, py::arg("ds"), py::arg("k") = 3, py::arg("dist") = "euclidean", py::arg("cl") = "smaller", py::arg("seed") = 0);
    m.def("gauss_noise", [](const Dataset& ds, const std::string& c_perc, double pert, bool repl, std::uint64_t seed) {
        return pack(gauss_noise(ds, ClassPercSpec::parse(c_perc), pert, repl, seed));
    }, py::arg("ds"), py::arg("c_perc") = "balance", py::arg("pert") = 0.1, py::arg("repl") = false, py::arg("seed") = 0);
    m.def("smote", [](const Dataset& ds, const std::string& c_perc, std::size_t k, const std::string& dist, bool repl,
                      std::uint64_t seed) {
        return pack(smote(ds, ClassPercSpec::parse(c_perc), k, Metric::parse(dist), repl, seed));
    }, py::arg("ds"), py::arg("c_perc") = "balance", py::arg("k") = 5, py::arg("dist") = "euclidean",
       py::arg("repl") = false, py::arg("seed") = 0);

    // regression; `points` overrides the automatic relevance
    using Points = std::optional<std::vector<std::array<double, 3>>>;
    m.def("rand_under_r", [](const Dataset& ds, double thr_rel, const std::string& c_perc, bool repl, Points points,
                             std::uint64_t seed) {
        return pack(rand_under_r(ds, relevance(ds, points, "both"), thr_rel, BumpPercSpec::parse(c_perc), repl, seed).outcome);
    }, py::arg("ds"), py::arg("thr_rel") = 0.5, py::arg("c_perc") = "balance", py::arg("repl") = false,
       py::arg("points") = py::none(), py::arg("seed") = 0);
    m.def("rand_over_r", [](const Dataset& ds, double thr_rel, const std::string& c_perc, Points points, std::uint64_t seed) {
        return pack(rand_over_r(ds, relevance(ds, points, "both"), thr_rel, BumpPercSpec::parse(c_perc), seed).outcome);
    }, py::arg("ds"), py::arg("thr_rel") = 0.5, py::arg("c_perc") = "balance", py::arg("points") = py::none(),
       py::arg("seed") = 0);
    m.def("gauss_noise_r", [](const Dataset& ds, double thr_rel, const std::string& c_perc, double pert, bool repl,
                              Points points, std::uint64_t seed) {
        return pack(gauss_noise_r(ds, relevance(ds, points, "both"), thr_rel, BumpPercSpec::parse(c_perc), pert, repl, seed)
                        .outcome);
    }, py::arg("ds"), py::arg("thr_rel") = 0.5, py::arg("c_perc") = "balance", py::arg("pert") = 0.1,
       py::arg("repl") = false, py::arg("points") = py::none(), py::arg("seed") = 0);
    m.def("smoter", [](const Dataset& ds, double thr_rel, const std::string& c_perc, std::size_t k, const std::string& dist,
                       bool repl, Points points, std::uint64_t seed) {
        return pack(smoter(ds, relevance(ds, points, "both"), thr_rel, BumpPercSpec::parse(c_perc), k, Metric::parse(dist),
                           repl, seed)
                        .outcome);
    }, py::arg("ds"), py::arg("thr_rel") = 0.5, py::arg("c_perc") = "balance", py::arg("k") = 5,
       py::arg("dist") = "euclidean", py::arg("repl") = false, py::arg("points") = py::none(), py::arg("seed") = 0);
    m.def("imp_samp_r", [](const Dataset& ds, std::optional<double> u, std::optional<double> o, double thr_rel,
                           const std::string& c_perc, Points points, std::uint64_t seed) {
        const auto params = (u || o) ? ImpSampParams::intensities(u.value_or(0.0), o.value_or(0.0))
                                     : ImpSampParams::bumps(thr_rel, BumpPercSpec::parse(c_perc));
        return pack(imp_samp_r(ds, relevance(ds, points, "both"), params, seed).outcome);
    }, py::arg("ds"), py::arg("u") = py::none(), py::arg("o") = py::none(), py::arg("thr_rel") = 0.5,
       py::arg("c_perc") = "balance", py::arg("points") = py::none(), py::arg("seed") = 0);
}
