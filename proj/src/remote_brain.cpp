#include <chrono>
#include <cmath>
#include <httplib.h>
#include <json.hpp>

#include "swarm/error.hpp"
#include "swarm/overmind.hpp"

namespace swarm {

namespace {

// "http://host:port/v1/chat/completions" -> ("http://host:port", "/v1/chat/completions").
std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme = url.find("://");
    std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
    auto slash = url.find('/', host_start);
    if (slash == std::string::npos) return {url, "/v1/chat/completions"};
    return {url.substr(0, slash), url.substr(slash)};
}

class RemoteBrain final : public Brain {
public:
    RemoteBrain(std::string endpoint, std::string model, int timeout_ms, double seconds_per_tick)
        : endpoint_(std::move(endpoint)), model_(std::move(model)), timeout_ms_(timeout_ms),
          seconds_per_tick_(seconds_per_tick) {
        if (seconds_per_tick_ <= 0) throw Error("bad-brain", "seconds per tick must be positive");
    }

    BrainReply respond(BrainRole, const std::string& prompt) override {
        auto [base, path] = split_url(endpoint_);
        httplib::Client client(base);
        auto timeout = std::chrono::milliseconds(std::max(1, timeout_ms_));
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);
        client.set_write_timeout(timeout);

        nlohmann::json body = {{"model", model_}, {"messages", {{{"role", "user"}, {"content", prompt}}}}};
        auto start = std::chrono::steady_clock::now();
        auto res = client.Post(path, body.dump(), "application/json");
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!res) throw Error("brain-unavailable", "request failed: " + httplib::to_string(res.error()));
        if (res->status != 200)
            throw Error("brain-unavailable", "endpoint answered HTTP " + std::to_string(res->status));
        try {
            auto j = nlohmann::json::parse(res->body);
            std::string text = j.at("choices").at(0).at("message").at("content").get<std::string>();
            return {std::move(text), static_cast<int>(std::lround(seconds / seconds_per_tick_))};
        } catch (const nlohmann::json::exception& e) {
            throw Error("brain-unavailable", std::string("malformed completion: ") + e.what());
        }
    }

    std::string describe() const override { return "remote:" + endpoint_; }

private:
    std::string endpoint_;
    std::string model_;
    int timeout_ms_;
    double seconds_per_tick_;
};

}  // namespace

std::unique_ptr<Brain> remote_brain(std::string endpoint, std::string model, int timeout_ms,
                                    double seconds_per_tick) {
    return std::make_unique<RemoteBrain>(std::move(endpoint), std::move(model), timeout_ms, seconds_per_tick);
}

}  // namespace swarm
