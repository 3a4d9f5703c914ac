import { defineConfig } from 'vitest/config';

export default defineConfig({
  test: {
    environment: 'happy-dom',
    // the page "runs" on the service origin, like a same-origin deploy
    environmentOptions: { happyDOM: { url: 'http://127.0.0.1:8741' } },
    globalSetup: './tests/global-setup.ts',
    fileParallelism: false, // the suites share one live service
    testTimeout: 120_000,
    hookTimeout: 60_000,
  },
});
