#include "ctfagent/container_sandbox.hpp"

#include <netdb.h>
#include <sys/socket.h>

#include <cstdlib>
#include <cstring>
#include <random>
#include <sstream>

#include "ctfagent/subprocess.hpp"
#include "ctfagent/util.hpp"

namespace ctfagent {

namespace {

std::string random_suffix() {
  std::random_device rd;
  std::mt19937_64 gen(rd());
  std::uniform_int_distribution<uint64_t> dist;
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(dist(gen)));
  return buf;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out.push_back(c);
  }
  out += "'";
  return out;
}

// IPv4 addresses for a host, resolved on the harness side. iptables rules
// and /etc/hosts entries are rendered from these so the container never
// needs DNS egress.
std::vector<std::string> resolve_ipv4(const std::string& host) {
  struct addrinfo hints {};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  struct addrinfo* res = nullptr;
  if (getaddrinfo(host.c_str(), nullptr, &hints, &res) != 0 || !res)
    throw PolicyApplyFailureError("cannot resolve allowlist host: " + host);
  std::vector<std::string> ips;
  for (auto* p = res; p; p = p->ai_next) {
    char ip[INET6_ADDRSTRLEN];
    auto* sa = reinterpret_cast<struct sockaddr_in*>(p->ai_addr);
    if (getnameinfo(reinterpret_cast<struct sockaddr*>(sa), sizeof(*sa), ip, sizeof(ip), nullptr,
                    0, NI_NUMERICHOST) == 0)
      ips.emplace_back(ip);
  }
  freeaddrinfo(res);
  if (ips.empty()) throw PolicyApplyFailureError("no IPv4 address for allowlist host: " + host);
  return ips;
}

bool looks_like_ip(const std::string& host) {
  return host.find_first_not_of("0123456789.") == std::string::npos;
}

}  // namespace

std::string detect_container_runtime() {
  if (const char* forced = std::getenv("CTFAGENT_CONTAINER_RUNTIME"); forced && *forced) {
    RunResult probe = run_process({forced, "version"}, {.timeout_ms = 15000});
    return probe.exit_code == 0 ? forced : "";
  }
  for (const char* rt : {"docker", "podman"}) {
    RunResult probe = run_process({rt, "version"}, {.timeout_ms = 15000});
    if (probe.exit_code == 0) return rt;
  }
  return "";
}

ContainerSandbox::ContainerSandbox(const SandboxSpec& spec, std::string runtime)
    : runtime_(std::move(runtime)), workdir_(spec.workdir) {
  spec.validate();
  if (runtime_.empty()) throw RuntimeUnavailableError("no container runtime found");
  name_ = "ctfagent-" + random_suffix();

  std::vector<std::string> args = {runtime_, "run", "-d", "--name", name_,
                                   "--cap-add", "NET_ADMIN"};
  if (spec.cpu_limit) args.insert(args.end(), {"--cpus", std::to_string(*spec.cpu_limit)});
  if (spec.memory_limit_mib)
    args.insert(args.end(), {"--memory", std::to_string(*spec.memory_limit_mib) + "m"});
  args.insert(args.end(), {spec.image_ref, "sleep", "infinity"});

  RunResult created = run_process(args, {.timeout_ms = 300000});
  if (created.exit_code != 0)
    throw ImagePullFailureError("container create failed for image '" + spec.image_ref +
                                "': " + trim(created.err));
  alive_ = true;

  // No exec/stage is possible before the policy is in place; any failure
  // below removes the container.
  try {
    apply_base_policy();
    for (const auto& rule : spec.network_policy.allow) allow_endpoint(rule);
    run_in_container({"mkdir -p " + shell_quote(workdir_)}, "workdir setup");
  } catch (...) {
    destroy();
    throw;
  }
}

ContainerSandbox::~ContainerSandbox() { destroy(); }

void ContainerSandbox::apply_base_policy() {
  // Default-deny both directions; loopback and reply traffic stay usable.
  run_in_container(
      {
          "iptables -w -P OUTPUT DROP",
          "iptables -w -P INPUT DROP",
          "iptables -w -P FORWARD DROP",
          "iptables -w -A INPUT -i lo -j ACCEPT",
          "iptables -w -A OUTPUT -o lo -j ACCEPT",
          "iptables -w -A INPUT -m state --state ESTABLISHED,RELATED -j ACCEPT",
      },
      "network policy");
}

void ContainerSandbox::run_in_container(const std::vector<std::string>& shell_script_lines,
                                        const std::string& what) {
  std::ostringstream script;
  script << "set -e\n";
  for (const auto& line : shell_script_lines) script << line << "\n";
  RunResult r = run_process({runtime_, "exec", name_, "/bin/sh", "-c", script.str()},
                            {.timeout_ms = 60000});
  if (r.exit_code != 0)
    throw PolicyApplyFailureError(what + " failed in container " + name_ + ": " + trim(r.err));
}

void ContainerSandbox::allow_endpoint(const AllowRule& rule) {
  if (!alive_) throw HandleDeadError("allow_endpoint on destroyed sandbox");
  if (rule.port < 1 || rule.port > 65535)
    throw PolicyApplyFailureError("allow rule port out of range: " + std::to_string(rule.port));
  const std::string proto = net_protocol_to_string(rule.protocol);
  std::vector<std::string> lines;
  std::vector<std::string> ips =
      looks_like_ip(rule.host) ? std::vector<std::string>{rule.host} : resolve_ipv4(rule.host);
  for (const auto& ip : ips) {
    lines.push_back("iptables -w -I OUTPUT 1 -p " + proto + " -d " + ip + " --dport " +
                    std::to_string(rule.port) + " -j ACCEPT");
  }
  if (!looks_like_ip(rule.host))
    lines.push_back("echo " + shell_quote(ips.front() + " " + rule.host) + " >> /etc/hosts");
  run_in_container(lines, "allowlist update");
}

ExecResult ContainerSandbox::exec(const ExecRequest& req) {
  if (!alive_) throw HandleDeadError("exec on destroyed sandbox");
  if (req.command.empty()) throw SandboxError("exec requires a non-empty command");
  if (req.timeout_s < 1) throw SandboxError("exec timeout_s must be >= 1");

  std::vector<std::string> args = {runtime_, "exec", "-w", workdir_};
  for (const auto& [k, v] : req.env) args.insert(args.end(), {"-e", k + "=" + v});
  args.push_back(name_);
  // GNU timeout exits 124 on expiry; -k hard-kills stragglers shortly after.
  const std::string wrapped = "timeout -k 5 " + std::to_string(req.timeout_s) + " /bin/sh -c " +
                              shell_quote(req.command);
  args.insert(args.end(), {"/bin/sh", "-c", wrapped});

  RunOptions opts;
  opts.max_output_bytes = kOutputCapBytes;
  // Host-side backstop in case the runtime client itself wedges.
  opts.timeout_ms = static_cast<long long>(req.timeout_s) * 1000 + 30000;
  RunResult r = run_process(args, opts);

  ExecResult result;
  result.out = std::move(r.out);
  result.err = std::move(r.err);
  result.duration_ms = r.duration_ms;
  result.out_truncated = r.out_truncated;
  result.err_truncated = r.err_truncated;
  result.timed_out = r.timed_out || r.exit_code == 124;
  result.exit_code = result.timed_out ? -1 : r.exit_code;
  return result;
}

void ContainerSandbox::stage_files(const std::vector<StagedFile>& files) {
  if (!alive_) throw HandleDeadError("stage_files on destroyed sandbox");
  verify_staged_sources(files);
  for (const auto& f : files) {
    const std::string dest = workdir_ + "/" + f.dest_path;
    const auto slash = dest.rfind('/');
    if (slash != std::string::npos && slash > 0)
      run_in_container({"mkdir -p " + shell_quote(dest.substr(0, slash))}, "staging dir");
    RunResult r = run_process({runtime_, "cp", f.source_path.string(), name_ + ":" + dest},
                              {.timeout_ms = 120000});
    if (r.exit_code != 0)
      throw SandboxError("staging '" + f.dest_path + "' failed: " + trim(r.err));
  }
}

void ContainerSandbox::destroy() {
  if (!alive_) return;
  alive_ = false;
  run_process({runtime_, "rm", "-f", name_}, {.timeout_ms = 60000});
}

std::unique_ptr<Sandbox> create_sandbox(const SandboxSpec& spec) {
  std::string runtime = detect_container_runtime();
  if (runtime.empty())
    throw RuntimeUnavailableError("no container runtime available (tried docker, podman)");
  return std::make_unique<ContainerSandbox>(spec, std::move(runtime));
}

}  // namespace ctfagent
