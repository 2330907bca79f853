// Copyright 2026 The Quingo Toolchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quingo/runtime.hpp"

#include <filesystem>
#include <map>
#include <mutex>

#include "quingo/codegen.hpp"
#include "quingo/frontend.hpp"
#include "quingo/lower.hpp"
#include "quingo/main_gen.hpp"
#include "quingo/partial_eval.hpp"
#include "quingo/qvm.hpp"
#include "quingo/scheduler.hpp"

namespace quingo {

namespace {

class QvmBackend : public Backend {
 public:
  void upload(const QProgram& program, const PlatformConfig& cfg, const RuntimeConfig& rt) override {
    VmOptions o;
    o.seed = rt.seed;
    o.zero_init = rt.zero_init;
    o.strict_pulse = rt.strict_pulse;
    o.classical_cycle_ns = rt.classical_cycle_ns;
    o.max_cycles = rt.max_cycles;
    o.memory_size = rt.memory_size;
    cfg_ = cfg;
    vm_ = std::make_unique<Vm>(program, cfg_, o);
  }
  void start() override {
    if (!vm_) throw Error(Errc::NotCompleted, "no program uploaded");
  }
  void wait() override { vm_->run(); }
  Bytes read(size_t addr, size_t len) override { return vm_->read_memory(addr, len); }
  std::vector<MeasureEvent> measurements() const override { return vm_->measurements(); }
  int64_t cycles() const override { return vm_->cycle(); }

 private:
  PlatformConfig cfg_;
  std::unique_ptr<Vm> vm_;
};

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, BackendFactory>& registry() {
  static std::map<std::string, BackendFactory> r{{"qvm", [] { return std::make_unique<QvmBackend>(); }}};
  return r;
}

void log_phase(std::vector<std::string>* log, int n, const std::string& what) {
  if (log) log->push_back("phase " + std::to_string(n) + ": " + what);
}

// Errors thrown while running a phase carry that phase number.
struct PhaseFailure {
  int phase;
  Error error;
};

template <typename F>
auto in_phase(int n, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw PhaseFailure{n, e};
  }
}

}  // namespace

void register_backend(const std::string& name, BackendFactory factory) {
  std::lock_guard lock(registry_mutex());
  registry()[name] = std::move(factory);
}

std::unique_ptr<Backend> make_backend(const std::string& name) {
  std::lock_guard lock(registry_mutex());
  auto it = registry().find(name);
  if (it == registry().end()) throw Error(Errc::UnknownBackend, "no backend named '" + name + "'");
  return it->second();
}

std::vector<std::string> backend_names() {
  std::lock_guard lock(registry_mutex());
  std::vector<std::string> out;
  for (const auto& [n, f] : registry()) out.push_back(n);
  return out;
}

CompiledKernel compile_kernel(const std::string& kernel_path, const std::string& op, const std::vector<Value>& args,
                              const PlatformConfig& cfg, const RuntimeConfig& rt, std::vector<std::string>* log) {
  CompiledKernel out;
  std::vector<std::string> paths;
  std::filesystem::path kp(kernel_path);
  paths.push_back(kp.has_parent_path() ? kp.parent_path().string() : ".");
  paths.insert(paths.end(), rt.search_paths.begin(), rt.search_paths.end());
  SourceInput kernel{kernel_path, read_file(kernel_path)};

  log_phase(log, 3, "generate main for " + op);
  {
    TypedProgram alone = compile_frontend({kernel}, paths, cfg);
    const OpInfo* info = alone.find_root(op);
    if (!info || info->opaque)
      throw Error(Errc::UnknownKernelOp, "kernel " + kernel_path + " has no operation '" + op + "'");
    out.ret = info->ret;
    out.main_source = generate_main(op, args, info->params, info->ret);
  }

  log_phase(log, 4, "compile kernel");
  TypedProgram prog = compile_frontend({{"main.qu", out.main_source}, kernel}, paths, cfg);
  out.lowered = lower(prog, cfg, "main");
  PeOptions pe;
  pe.step_budget = rt.step_budget;
  out.residual = partially_execute(out.lowered, cfg, pe);
  const ir::Proc& main = out.residual.entry_proc();
  TimedIR timed = schedule(main, cfg);
  if (auto v = verify_schedule(timed, cfg))
    throw Error(Errc::Infeasible, "internal schedule check failed: " + v->message);
  out.schedule_dump = dump_schedule(timed);
  WireFormat fmt{rt.f32_doubles};
  out.assembly = emit(timed, cfg, fmt);
  out.program = assemble(out.assembly);
  return out;
}

RunHandle call_kernel(const std::string& kernel_path, const std::string& op, const std::vector<Value>& args,
                      const RuntimeConfig& rt) {
  RunHandle h;
  try {
    PlatformConfig cfg = in_phase(3, [&] { return load_config(rt.config_path); });
    // compile_kernel logs phases 3 and 4 itself; split the failure tag on
    // how far it got.
    try {
      h.compiled = compile_kernel(kernel_path, op, args, cfg, rt, &h.phase_log);
    } catch (const Error& e) {
      throw PhaseFailure{h.phase_log.size() >= 2 ? 4 : 3, e};
    }
    h.type = h.compiled.ret;
    h.descriptor = descriptor(h.type);

    log_phase(&h.phase_log, 5, "execute on " + rt.backend);
    auto backend = in_phase(5, [&] { return make_backend(rt.backend); });
    in_phase(5, [&] {
      backend->upload(h.compiled.program, cfg, rt);
      backend->start();
      backend->wait();
      return 0;
    });
    h.measurements = backend->measurements();
    h.cycles = backend->cycles();

    log_phase(&h.phase_log, 6, "decode result " + h.descriptor);
    in_phase(6, [&] {
      Bytes mem = backend->read(0, rt.memory_size);
      WireFormat fmt{rt.f32_doubles};
      Decoded d = decode_value(mem, h.type, 0, fmt);
      h.value = d.value;
      h.result.assign(mem.begin(), mem.begin() + static_cast<std::ptrdiff_t>(d.extent));
      return 0;
    });
    h.status = RunStatus::Completed;
  } catch (const PhaseFailure& f) {
    h.status = RunStatus::Failed;
    h.error = f.error;
    h.failed_phase = f.phase;
  }
  return h;
}

const Value& read_result(const RunHandle& handle) {
  if (handle.status != RunStatus::Completed)
    throw Error(Errc::NotCompleted, handle.status == RunStatus::Pending ? "kernel call has not run"
                                                                         : "kernel call failed; no result");
  return handle.value;
}

}  // namespace quingo
