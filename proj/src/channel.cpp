#include "deto/network/channel.hpp"

#include "deto/errors.hpp"

namespace deto {

ZohChannel::ZohChannel(std::vector<int> node_widths, int input_width)
    : node_widths_(std::move(node_widths)) {
  int off = 0;
  for (int w : node_widths_) {
    offsets_.push_back(off);
    off += w;
  }
  ybar_ = Eigen::VectorXd::Zero(off);
  ubar_ = Eigen::VectorXd::Zero(input_width);
  last_tx_.assign(node_widths_.size(), HybridTime{});
}

void ZohChannel::initialize(const Eigen::VectorXd& ybar0, const Eigen::VectorXd& ubar0) {
  if (ybar0.size() != ybar_.size()) throw BadInput("ZohChannel: initial ybar size mismatch");
  if (ubar0.size() != ubar_.size()) throw BadInput("ZohChannel: initial ubar size mismatch");
  ybar_ = ybar0;
  ubar_ = ubar0;
}

void ZohChannel::transmit_output(int node, const Eigen::Ref<const Eigen::VectorXd>& value,
                                 HybridTime when) {
  ybar_.segment(offsets_[node], node_widths_[node]) = value;
  last_tx_[node] = when;
}

void ZohChannel::transmit_input(const Eigen::Ref<const Eigen::VectorXd>& value, HybridTime when) {
  ubar_ = value;
  last_tx_u_ = when;
}

}  // namespace deto
