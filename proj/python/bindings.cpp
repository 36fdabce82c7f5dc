#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "rph/analysis.hpp"
#include "rph/dot.hpp"
#include "rph/heap.hpp"
#include "rph/runner.hpp"
#include "rph/trace.hpp"
#include "rph/workloads.hpp"

namespace py = pybind11;
using namespace rph;

namespace {

// Heaps built with `share_with` draw from the same node pool, which meld needs.
struct PyHeap {
  std::unique_ptr<Heap> heap;

  PyHeap(const std::string& kind, const std::string& policy, const PyHeap* share_with) {
    HeapConfig cfg = HeapConfig::parse(kind);
    if (!policy.empty()) cfg.policy = parse_policy(policy);
    cfg.verify = true;
    heap = std::make_unique<Heap>(cfg, share_with ? share_with->heap->shared_pool() : nullptr);
  }
};

py::object item_tuple(const Key& k) { return py::make_tuple(k.value, k.id); }

}  // namespace

PYBIND11_MODULE(_rankpair, m) {
  m.doc() = "Rank-pairing heaps, binomial queues and tournaments with cost counters";

  // Messages lead with the error kind, e.g. "dead handle: ...".
  static PyObject* heap_error = py::exception<HeapError>(m, "HeapError").release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const HeapError& e) {
      PyErr_SetString(heap_error, (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<Handle>(m, "Handle")
      .def_readonly("index", &Handle::index)
      .def("__eq__", [](const Handle& a, const Handle& b) { return a == b; })
      .def("__repr__", [](const Handle& h) {
        return "Handle(" + std::to_string(h.index) + ", gen " + std::to_string(h.generation) + ")";
      });

  py::class_<PyHeap>(m, "Heap")
      .def(py::init<const std::string&, const std::string&, const PyHeap*>(), py::arg("kind") = "rp2",
           py::arg("policy") = "", py::arg("share_with") = nullptr)
      .def_property_readonly("kind", [](const PyHeap& h) { return h.heap->config().label(); })
      .def("__len__", [](const PyHeap& h) { return h.heap->size(); })
      .def("insert", [](PyHeap& h, double value, ItemId id) { return h.heap->insert(value, id); },
           py::arg("value"), py::arg("id"))
      .def("find_min",
           [](const PyHeap& h) -> py::object {
             const auto x = h.heap->find_min();
             return x ? item_tuple(h.heap->key(*x)) : py::none();
           })
      .def("delete_min",
           [](PyHeap& h) -> py::object {
             const auto it = h.heap->delete_min();
             return it ? item_tuple(it->key) : py::none();
           })
      .def("decrease_key", [](PyHeap& h, Handle x, double delta) { h.heap->decrease_key(x, delta); })
      .def("erase", [](PyHeap& h, Handle x) { h.heap->erase(x); })
      .def("meld", [](PyHeap& h, PyHeap& other) { h.heap->meld(*other.heap); })
      .def("contains", [](const PyHeap& h, Handle x) { return h.heap->contains(x); })
      .def("key", [](const PyHeap& h, Handle x) { return item_tuple(h.heap->key(x)); })
      .def("root_ranks",
           [](const PyHeap& h) {
             std::vector<int> out;
             h.heap->for_each_root([&](NodeId r) { out.push_back(h.heap->pool()[r].rank); });
             return out;
           })
      .def("counters",
           [](const PyHeap& h) {
             const CostCounters& c = h.heap->counters();
             py::dict d;
             d["comparisons"] = c.comparisons;
             d["links"] = c.links;
             d["unfair_links"] = c.unfair_links;
             d["rank_steps"] = c.rank_steps;
             return d;
           })
      .def("potential",
           [](const PyHeap& h, const std::string& scheme) {
             return potential_value(*h.heap, scheme.empty() ? default_scheme(h.heap->config())
                                                            : parse_scheme(scheme));
           },
           py::arg("scheme") = "")
      .def("dot", [](const PyHeap& h, const std::string& view) {
        return export_dot(*h.heap, parse_dot_view(view));
      }, py::arg("view") = "half-ordered");

  m.def("gen_sort", [](std::size_t n, std::uint64_t seed) { return print_trace_text(gen_sort(n, seed)); },
        py::arg("n"), py::arg("seed") = 1, "Trace text: n shuffled inserts, then n delete-mins.");
  m.def(
      "gen_random",
      [](std::size_t ops, std::uint64_t seed, int heaps, const std::string& mix, bool decrease_key) {
        RandomWorkload w;
        w.ops = ops;
        w.seed = seed;
        w.heaps = heaps;
        if (!mix.empty()) w.mix = OpMix::parse(mix);
        w.decrease_key = decrease_key;
        return print_trace_text(gen_random(w));
      },
      py::arg("ops"), py::arg("seed") = 1, py::arg("heaps") = 4, py::arg("mix") = "",
      py::arg("decrease_key") = true);
  m.def(
      "run_trace",
      [](const std::string& text, const std::string& impl, const std::string& checks,
         const std::string& analysis) {
        RunOptions opts;
        opts.checks = parse_check_level(checks);
        opts.record_metrics = true;
        const HeapConfig cfg = HeapConfig::parse(impl);
        if (!analysis.empty())
          opts.analysis = analysis == "default" ? default_scheme(cfg) : parse_scheme(analysis);
        const RunResult r = run_trace(parse_trace_text(text), cfg, opts);
        std::ostringstream csv;
        write_metrics_csv(csv, r, opts.analysis.has_value());
        py::dict d;
        d["exit_code"] = r.exit_code;
        d["ops"] = r.ops;
        d["error"] = r.error;
        d["comparisons"] = r.counters.comparisons;
        d["links"] = r.counters.links;
        d["rank_steps"] = r.counters.rank_steps;
        d["metrics_csv"] = csv.str();
        return d;
      },
      py::arg("trace"), py::arg("impl") = "rp2", py::arg("checks") = "off", py::arg("analysis") = "");
}
