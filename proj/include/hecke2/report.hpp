#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "hecke2/common.hpp"

namespace hecke2 {

enum class ReportFormat { Text, Jsonl };

/// One verification result. Every fail carries a reproducible witness.
struct ReportRow {
  std::string campaign;
  std::string item;
  bool pass = false;
  std::string witness;
  double ms = 0.0;
};

namespace detail {

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace detail

inline void write_row(std::ostream& os, const ReportRow& r, ReportFormat fmt) {
  if (fmt == ReportFormat::Jsonl) {
    os << "{\"campaign\":\"" << detail::json_escape(r.campaign) << "\",\"item\":\""
       << detail::json_escape(r.item) << "\",\"status\":\"" << (r.pass ? "pass" : "fail")
       << "\",\"witness\":\"" << detail::json_escape(r.witness) << "\",\"ms\":" << std::fixed
       << std::setprecision(3) << r.ms << "}\n";
  } else {
    os << r.campaign << '\t' << r.item << '\t' << (r.pass ? "pass" : "fail") << '\t' << r.witness
       << '\t' << std::fixed << std::setprecision(3) << r.ms << "ms\n";
  }
  os.flush();
}

inline int default_thread_count() {
  if (const char* env = std::getenv("HECKE2_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return int(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

/// Runs body(i) for i in [0, count) on up to `threads` workers. Callers keep
/// results in pre-sized slots indexed by i, so output order is independent of
/// the thread count. The lowest-index exception wins and is rethrown.
template <class F>
void parallel_for(long count, int threads, F&& body) {
  if (count <= 0) return;
  if (threads <= 1 || count == 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  auto worker = [&] {
    while (true) {
      long i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        errors[std::size_t(i)] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  int n = int(std::min<long>(threads, count));
  pool.reserve(std::size_t(n));
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace hecke2
