#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ctfagent/sandbox.hpp"

namespace ctfagent {

// Name of the container CLI ("docker", "podman"); empty when none is on
// PATH. Honors the CTFAGENT_CONTAINER_RUNTIME override.
std::string detect_container_runtime();

// OCI-container sandbox driven through the runtime CLI. The firewall is
// programmed at creation: default-drop iptables policy inside the
// container, one ACCEPT per allow rule. Creation fails closed — if the
// policy cannot be applied the container is removed and no handle exists.
class ContainerSandbox : public Sandbox {
 public:
  ContainerSandbox(const SandboxSpec& spec, std::string runtime);
  ~ContainerSandbox() override;

  ContainerSandbox(const ContainerSandbox&) = delete;
  ContainerSandbox& operator=(const ContainerSandbox&) = delete;

  ExecResult exec(const ExecRequest& req) override;
  void stage_files(const std::vector<StagedFile>& files) override;
  void allow_endpoint(const AllowRule& rule) override;
  void destroy() override;
  bool alive() const override { return alive_; }
  std::string workdir() const override { return workdir_; }

  const std::string& container_name() const { return name_; }

 private:
  void apply_base_policy();
  void run_in_container(const std::vector<std::string>& shell_script_lines,
                        const std::string& what);

  std::string runtime_;
  std::string name_;
  std::string workdir_;
  bool alive_ = false;
};

// Detects a runtime and creates a policy-applied container sandbox.
std::unique_ptr<Sandbox> create_sandbox(const SandboxSpec& spec);

}  // namespace ctfagent
