// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tmds/codespec.hpp"
#include "tmds/compare.hpp"
#include "tmds/shard.hpp"
#include "tmds/verify.hpp"

namespace py = pybind11;
using namespace tmds;

namespace {

struct PyCode {
  CodeSpec spec;
  CodePtr code;
  std::string digest;

  explicit PyCode(CodeSpec s, bool force = false) : spec(std::move(s)), code(materialize(spec, force)), digest(spec.digest()) {}
};

Blob to_blob(const py::bytes& b) {
  const std::string s = b;
  return Blob(s.begin(), s.end());
}

py::bytes to_bytes(const Blob& b) { return py::bytes(reinterpret_cast<const char*>(b.data()), b.size()); }

std::vector<Blob> to_blobs(const std::vector<py::bytes>& v) {
  std::vector<Blob> out;
  for (const auto& b : v) out.push_back(to_blob(b));
  return out;
}

py::dict report_dict(const PropertyReport& r) {
  py::dict d;
  d["property"] = r.property;
  d["verdict"] = r.pass ? "pass" : "fail";
  d["scope"] = r.exhaustive ? "exhaustive" : "sampled";
  d["checked"] = r.checked;
  d["total"] = r.total;
  d["counterexample"] = r.counterexample;
  d["detail"] = r.detail;
  return d;
}

}  // namespace

PYBIND11_MODULE(_tmds, m) {
  m.doc() = "Multi-degree access-optimal MDS array codes";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<ShardError>(m, "ShardError", PyExc_ValueError);

  py::class_<PyCode>(m, "Code")
      .def(py::init([](std::size_t n, std::size_t k, unsigned delta0, std::vector<unsigned> degrees,
                       std::uint64_t seed, std::uint32_t q, bool force) {
             BuildConfig cfg;
             cfg.n = n;
             cfg.k = k;
             cfg.delta0 = delta0;
             cfg.degrees = std::move(degrees);
             cfg.seed = seed;
             cfg.q = q;
             return PyCode(make_spec(cfg, force), force);
           }),
           py::arg("n"), py::arg("k"), py::arg("delta0"), py::arg("degrees"), py::arg("seed") = 1, py::arg("q") = 0,
           py::arg("force") = false)
      .def_static(
          "from_spec", [](const std::string& text) { return PyCode(CodeSpec::parse(text)); }, py::arg("text"))
      .def_property_readonly("n", [](const PyCode& c) { return c.code->n; })
      .def_property_readonly("k", [](const PyCode& c) { return c.code->k; })
      .def_property_readonly("r", [](const PyCode& c) { return c.code->r; })
      .def_property_readonly("L", [](const PyCode& c) { return c.code->L; })
      .def_property_readonly("q", [](const PyCode& c) { return c.code->field->q(); })
      .def_property_readonly("degrees", [](const PyCode& c) { return c.code->degrees.degrees; })
      .def_property_readonly("digest", [](const PyCode& c) { return c.digest; })
      .def("spec_text", [](const PyCode& c) { return c.spec.to_text(); })
      .def(
          "encode",
          [](const PyCode& c, const py::bytes& data) {
            std::vector<py::bytes> out;
            for (const auto& s : encode_bytes(*c.code, c.digest, to_blob(data))) out.push_back(to_bytes(s));
            return out;
          },
          py::arg("data"), "n shard blobs for `data`")
      .def(
          "decode",
          [](const PyCode& c, const std::vector<py::bytes>& shards) {
            return to_bytes(decode_shards(*c.code, c.digest, to_blobs(shards)));
          },
          py::arg("shards"), "original bytes from at least k shards")
      .def(
          "repair",
          [](const PyCode& c, const std::vector<py::bytes>& helpers, std::size_t failed) {
            const ShardRepair r = repair_shard(*c.code, c.digest, to_blobs(helpers), failed);
            py::dict audit;
            audit["method"] = r.transcript.method;
            audit["downloaded"] = r.audit.downloaded;
            audit["accessed"] = r.audit.accessed;
            audit["bound"] = r.audit.bound;
            audit["optimal_repair"] = r.audit.optimal_repair;
            audit["optimal_access"] = r.audit.optimal_access;
            return py::make_tuple(to_bytes(r.shard), audit);
          },
          py::arg("helpers"), py::arg("failed"), "rebuilt shard and its bandwidth audit")
      .def(
          "verify",
          [](const PyCode& c, std::size_t sample, std::uint64_t seed) {
            CheckOptions opt;
            opt.seed = seed;
            if (sample) {
              opt.sample = sample;
              opt.force_sample = true;
            }
            std::vector<PropertyReport> reps = tmds_suite(*materialize_base(c.spec), opt);
            reps.push_back(check_mds(*c.code, opt));
            reps.push_back(check_repair_bound(*c.code, opt));
            py::list out;
            for (const auto& r : reps) out.append(report_dict(r));
            return out;
          },
          py::arg("sample") = 0, py::arg("seed") = 1, "certification reports, one dict per property");

  m.def(
      "compare",
      [](std::size_t n, std::size_t k, unsigned delta0, std::vector<unsigned> degrees) {
        py::list out;
        for (const auto& row : compare_rows(n, k, delta0, std::move(degrees))) {
          py::dict d;
          d["code"] = row.code;
          d["degrees"] = row.degrees;
          d["subpacketization"] = row.subpacketization.str();
          d["field_bound"] = row.field_bound;
          d["field_log2"] = row.field_log2;
          out.append(d);
        }
        return out;
      },
      py::arg("n"), py::arg("k"), py::arg("delta0"), py::arg("degrees"));
}
