// epicast: command-line front end.
//
//   epicast forecast  --input india.csv --model holt-wbann --horizon 7 --out out/
//   epicast adjust    --input panel.csv --weight-mode "ewma(0.9)"
//   epicast monitor   --input india.csv --model holt --model arima --window 4
//   epicast shelflife --input india.csv --train 153 --threshold 5
//   epicast r0        --input panel.csv --gi-mean 5 --gi-shape 2
//
// Verbosity is read from EPICAST_LOG (error | warn | info | debug).

#include <CLI11.hpp>

#include "epicast/cli/commands.hpp"
#include "epicast/hybrid.hpp"

namespace {

void add_common(CLI::App* cmd, epicast::cli::RunConfig& cfg) {
    cmd->add_option("--input", cfg.input, "Input CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", cfg.out, "Output directory")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Base random seed")->capture_default_str();
    cmd->add_flag("--svg", cfg.svg, "Also write an SVG chart");
}

void add_tdnn(CLI::App* cmd, epicast::cli::RunConfig& cfg) {
    cmd->add_option("--lags", cfg.tdnn.lags, "TDNN input lags")->capture_default_str();
    cmd->add_option("--hidden", cfg.tdnn.hidden, "TDNN hidden units")->capture_default_str();
    cmd->add_option("--repeats", cfg.tdnn.repeats, "Networks averaged per TDNN")->capture_default_str();
    cmd->add_option("--epochs", cfg.tdnn.epochs, "Training epochs per network")->capture_default_str();
    cmd->add_option("--learning-rate", cfg.tdnn.learning_rate, "Gradient step size")->capture_default_str();
}

auto model_check() {
    return CLI::Validator(
        [](std::string& tag) {
            return epicast::is_known_model(tag) ? std::string{} : "unknown model '" + tag + "'";
        },
        "MODEL");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid epidemic count forecasting, reconciliation and monitoring"};
    app.require_subcommand(1);
    epicast::cli::RunConfig cfg;

    auto* forecast = app.add_subcommand("forecast", "Forecast h days ahead");
    add_common(forecast, cfg);
    add_tdnn(forecast, cfg);
    forecast->add_option("--model", cfg.models, "arima | arima(p,d,q) | arima-wbf | holt | holt-wbann")
        ->check(model_check());
    forecast->add_option("--horizon", cfg.horizon, "Days ahead")->capture_default_str();
    forecast->add_flag("--weekly", cfg.weekly, "Also write weekly sums");

    auto* adjust = app.add_subcommand("adjust", "Sum-consistent next-day forecasts for a panel");
    add_common(adjust, cfg);
    add_tdnn(adjust, cfg);
    adjust->add_option("--model", cfg.models, "Model used for every series")->check(model_check());
    adjust->add_option("--weight-mode", cfg.weight_mode, "last | window(k) | ewma(lambda)")
        ->capture_default_str();

    auto* monitor = app.add_subcommand("monitor", "Rolling-window model comparison");
    add_common(monitor, cfg);
    add_tdnn(monitor, cfg);
    monitor->add_option("--model", cfg.models, "Models to compare (repeatable; default all four)")
        ->delimiter(';')
        ->check(model_check());
    monitor->add_option("--window", cfg.window, "Moving window width k")->capture_default_str();

    auto* shelf = app.add_subcommand("shelflife", "Days until forecast APE crosses a threshold");
    add_common(shelf, cfg);
    add_tdnn(shelf, cfg);
    shelf->add_option("--model", cfg.models, "Model to assess")->check(model_check());
    shelf->add_option("--train", cfg.train_len, "Training length m (default: length - 150)");
    shelf->add_option("--threshold", cfg.threshold_pct, "APE threshold in percent")->capture_default_str();

    auto* r0 = app.add_subcommand("r0", "Basic reproduction number");
    add_common(r0, cfg);
    r0->add_option("--gi-mean", cfg.generation_interval.mu, "Generation interval mean (days)")
        ->capture_default_str();
    r0->add_option("--gi-shape", cfg.generation_interval.kappa, "Generation interval gamma shape")
        ->capture_default_str();
    r0->add_option("--growth-window", cfg.growth_window, "Days in the exponential-growth fit")
        ->capture_default_str();
    r0->add_option("--population", cfg.population, "Population for an SIR fit (single series only)");

    CLI11_PARSE(app, argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();
    return epicast::cli::run(cfg);
}
