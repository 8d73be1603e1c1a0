#ifndef GRAPHHAUS_TOOLS_CLI_HPP
#define GRAPHHAUS_TOOLS_CLI_HPP

#include <graphhaus/api.hpp>
#include <graphhaus/scheduler.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace graphhaus::cli
{
    enum ExitCode
    {
        success = 0,
        user_error = 1,
        data_error = 2
    };

    struct Config
    {
        std::string store;
        std::string host = "127.0.0.1";
        int port = 8080;
        api::ApiOptions api;
        scheduler::SchedulerConfig scheduler;
        bool extended_invariants = false;
    };

    /// Reads a JSON config file. Relative paths inside it resolve against
    /// the file's directory.
    auto load_config(const std::string & path) -> Config;

    /// Runs one command line (without the program name) and returns the
    /// process exit code.
    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}

#endif
