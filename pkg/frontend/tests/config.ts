/** Where the test service listens; global-setup starts it here. */
export const PORT = 8741;
export const BASE = `http://127.0.0.1:${PORT}`;
