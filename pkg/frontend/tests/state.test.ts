import { describe, expect, it } from 'vitest';
import { ApiClient, ProjectDocument, ReportBundle } from '../src/api.js';
import { AppStore } from '../src/state.js';
import { BASE } from './config.js';
import { uid } from './helpers.js';

function blankDoc(): ProjectDocument {
  return {
    schema_version: 1,
    id: 'p',
    version: 0,
    criteria: [],
    alternatives: [],
    ratings: {},
    references: {},
    matrices: {},
    statements: [],
    rounds: [],
  };
}

describe('version discipline', () => {
  it('turns a stale write into a reload-and-merge prompt, not an error', async () => {
    const api = new ApiClient(BASE);
    const created = await api.createProject(uid('stale'), { template: 'empty' });
    const store = new AppStore(api);
    store.openProject(created.document, created.token);

    // someone else edits first
    await api.putProject(
      { ...created.document, alternatives: [{ id: 'A', name: '' }] },
      created.token,
    );

    // our snapshot is now stale; the store reports a conflict
    await store.run(async () => {
      const doc = store.current.doc!;
      await api.putProject(
        { ...doc, alternatives: [{ id: 'B', name: '' }] },
        store.current.token,
      );
    });
    expect(store.current.error).toBeNull();
    expect(store.current.conflict).not.toBeNull();
    expect(store.current.conflict!.current.version).toBe(created.document.version + 1);

    // accepting swaps in the server snapshot; the retry then lands
    store.acceptConflict();
    expect(store.current.conflict).toBeNull();
    expect(store.current.doc!.alternatives.map((a) => a.id)).toEqual(['A']);

    await store.run(async () => {
      const doc = store.current.doc!;
      const saved = await api.putProject(
        { ...doc, alternatives: [...doc.alternatives, { id: 'B', name: '' }] },
        store.current.token,
      );
      store.patch({ doc: saved.document });
    });
    expect(store.current.conflict).toBeNull();
    expect(store.current.doc!.alternatives.map((a) => a.id)).toEqual(['A', 'B']);
  });
});

describe('what-if previews', () => {
  it('keeps staged statements out of the document', () => {
    const store = new AppStore(new ApiClient(BASE));
    store.openProject(blankDoc(), 'tok');
    store.stage({ kind: 'weak_pref', args: ['a', 'b'], label: '' });
    expect(store.current.staged).toHaveLength(1);
    expect(store.current.doc!.statements).toHaveLength(0);
    store.unstage(0);
    expect(store.current.staged).toHaveLength(0);
  });

  it('lets only the latest overlapping preview through', async () => {
    const api = new ApiClient(BASE);
    const pending: ((bundle: ReportBundle) => void)[] = [];
    api.whatif = () =>
      new Promise<ReportBundle>((resolve) => {
        pending.push(resolve);
      });

    const store = new AppStore(api);
    store.openProject(blankDoc(), 'tok');
    const older = store.preview();
    const newer = store.preview();
    expect(pending).toHaveLength(2);

    const bundleA = { project_id: 'a' } as unknown as ReportBundle;
    const bundleB = { project_id: 'b' } as unknown as ReportBundle;
    pending[1](bundleB); // the newer answers first
    pending[0](bundleA); // the older limps in afterwards

    await expect(newer).resolves.toBe(bundleB);
    await expect(older).resolves.toBeNull(); // superseded, must not render
  });
});
