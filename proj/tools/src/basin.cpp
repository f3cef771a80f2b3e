#include "quadyn_app/basin.hpp"

#include <algorithm>
#include <thread>

#include "quadyn/format.hpp"

namespace quadyn::app {

namespace {

BasinRecord run_sample(const BasinConfig& config, int id) {
  const auto sid = static_cast<std::uint64_t>(id);
  const AngleTuple q0 = config.trapezoid_seeds ? sample_trapezoid(config.seed, sid)
                                               : sample_angles(config.seed, sid, config.margin);
  const Trajectory traj = iterate(q0, config.max_iter, config.tol);
  BasinRecord rec;
  rec.sample_id = id;
  rec.seed = config.seed;
  rec.initial = q0.values();
  rec.classification = traj.cycle.classification;
  rec.iterations = traj.iterations();
  rec.residual = traj.cycle.residual;
  rec.match_distance = traj.cycle.match_distance;
  return rec;
}

}  // namespace

std::vector<BasinRecord> run_basin(const BasinConfig& config) {
  if (config.samples < 1 || config.threads < 1) {
    throw Error(ErrorCode::DomainError, "basin needs samples >= 1 and threads >= 1");
  }
  std::vector<BasinRecord> records(static_cast<std::size_t>(config.samples));
  const int workers = std::min(config.threads, config.samples);
  if (workers == 1) {
    for (int id = 0; id < config.samples; ++id) {
      records[static_cast<std::size_t>(id)] = run_sample(config, id);
    }
    return records;
  }
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(workers));
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int id = w; id < config.samples; id += workers) {
            records[static_cast<std::size_t>(id)] = run_sample(config, id);
          }
        } catch (...) {
          failures[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
  }
  for (const auto& f : failures) {
    if (f) {
      std::rethrow_exception(f);
    }
  }
  return records;
}

std::map<CycleClass, int> class_frequencies(const std::vector<BasinRecord>& records) {
  std::map<CycleClass, int> freq;
  for (const auto& r : records) {
    ++freq[r.classification];
  }
  return freq;
}

void write_basin_csv(std::ostream& out, const std::vector<BasinRecord>& records) {
  out << "sample_id,alpha0,beta0,gamma0,delta0,class,iters,residual,match_distance\n";
  for (const auto& r : records) {
    out << r.sample_id;
    for (double v : r.initial) {
      out << ',' << format_real(v);
    }
    out << ',' << to_string(r.classification) << ',' << r.iterations << ',' << format_real(r.residual) << ','
        << format_real(r.match_distance) << '\n';
  }
  const auto freq = class_frequencies(records);
  out << "# samples=" << records.size();
  for (CycleClass c : {CycleClass::General2Cycle, CycleClass::Trapezoid2Cycle, CycleClass::SquareFixed,
                       CycleClass::OtherCycle, CycleClass::NoConvergence}) {
    const auto it = freq.find(c);
    out << ' ' << to_string(c) << '=' << (it == freq.end() ? 0 : it->second);
  }
  out << '\n';
}

}  // namespace quadyn::app
