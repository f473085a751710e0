UNEXPECTED_TOOL_ERROR_MESSAGE = "An unexpected error occurred while computing the frequency. Check the server logs."
DEGENERATE_SIGNAL_MESSAGE = "The signal magnitude is zero at this instant, so its frequency is undefined."
PLL_CHANNELS_MESSAGE = "The SRF-PLL needs a three-phase (a, b, c) waveform."
POWER_INPUTS_MESSAGE = "The power method needs --current and --capacitance."
